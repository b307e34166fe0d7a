#pragma once

#include "toricmirror/arith.hpp"

namespace toricmirror {

/**
 * Outcome of an exact feasibility test for {x >= 0 : A x = b}.  When
 * infeasible, `farkas` is a vector y with y^T A >= 0 and y^T b < 0.
 */
struct FeasibilityResult {
    bool feasible = false;
    RatVec point;
    RatVec farkas;
};

/** Phase-one simplex over the rationals with Bland's anti-cycling rule. */
FeasibilityResult feasible_standard_form(const RatMat& a, const RatVec& b);

/**
 * Outcome of the strict system M w >= 1 (w free).  When infeasible, `dual`
 * is y >= 0 with y^T M = 0 and sum(y) = 1.
 */
struct StrictSystemResult {
    bool feasible = false;
    RatVec solution;
    RatVec dual;
};

StrictSystemResult solve_strict_system(const RatMat& m);

/** Replays a certificate produced by solve_strict_system; true iff it is valid. */
bool check_strict_certificate(const RatMat& m, const StrictSystemResult& r);

}  // namespace toricmirror
