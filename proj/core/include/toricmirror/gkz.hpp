#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricmirror/algebra.hpp"
#include "toricmirror/config.hpp"
#include "toricmirror/series.hpp"
#include "toricmirror/triangulation.hpp"

namespace toricmirror {

/** The data (A, beta, L) of an A-hypergeometric system. */
struct GkzSystem {
    PointConfiguration config;
    RatVec beta;
    GaleDiagram gale;

    /** beta = (-1, 0..0) for hypersurfaces and (-1^r, 0..0) for complete intersections. */
    static GkzSystem standard(const PointConfiguration& cfg);
    /** Explicit exponent; throws Error(gkz, BadExponent) on a length mismatch. */
    static GkzSystem with_beta(const PointConfiguration& cfg, RatVec beta);
};

/** prod d_i^{l_i, l_i>0} - prod d_i^{-l_i, l_i<0} in the variables a_i. */
struct BoxOperator {
    IntVec ell;
    std::string str(const std::vector<std::string>& labels) const;
};

/** sum_i A_ji a_i d/da_i - beta_j. */
struct EulerOperator {
    RatVec row;
    Rat beta;
    std::string str(const std::vector<std::string>& labels) const;
};

struct GkzOperators {
    std::vector<BoxOperator> boxes;
    std::vector<EulerOperator> euler;
};

GkzOperators gkz_operators(const GkzSystem& sys);

/**
 * A c with A c = beta.  Origin-supported solutions are preferred (c = -1 on
 * each origin block when that works); otherwise a basic solution of minimal
 * support.  Throws Error(gkz, NoSolution).
 */
RatVec exponent_shift(const GkzSystem& sys);

/**
 * Box operator of l = sum_k m_k l^(k) pushed forward to the chart
 * coordinates x_k = s_k a^{l^(k)}: x^{m-} P+(c + L theta) - s^m x^{m+} P-(c + L theta).
 */
ThetaOperator pushforward_box(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift, const IntVec& m);

/** Pushforwards of sum m_k l^(k) for every nonzero m in {-1,0,1}^s. */
std::vector<ThetaOperator> chart_operators(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift);

/** Pushed-forward Euler operators (A c - beta)_j + sum_k (A l^(k))_j theta_k. */
std::vector<ThetaOperator> pushforward_euler(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift);

/** Coefficient of x^n in w0; throws NonMaximalChart at a pole of the origin factors. */
Rat w0_coefficient(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift, const Exponent& n);

/** Holomorphic solution sum_n c(n) x^n with c(0) = 1. */
LogSeries frobenius_w0(const GkzSystem& sys, const ChartBasis& chart, const Truncation& trunc);

/**
 * Value q + g*gamma + z2*zeta(2) + z3*zeta(3) + l2*ln(2) of a Taylor
 * coefficient of log Gamma(a + e) - log Gamma(a).
 */
struct TransValue {
    Rat rational, gamma, zeta2, zeta3, ln2;
    bool operator==(const TransValue& o) const = default;
};

/**
 * Coefficients t_1..t_depth of log Gamma(a + e) - log Gamma(a) = sum t_k e^k
 * (index 0 holds zero) for a a positive integer or a positive half-integer.
 * Throws DepthExceeded above depth 3 and UnsupportedShift for other a.
 */
std::vector<TransValue> gamma_log_expansion(const Rat& a, int depth);

/** The series built by frobenius_cohomology, all over the ring basis. */
struct CohomologySeries {
    /** w_s = sum_n c(n + PJ)/c(PJ) x^(n + PJ). */
    LogSeries ws;
    /** w_s without the exp(sum J_k L_k) factor. */
    LogSeries ws_tilde;
    /** w0 = c(PJ) w_s; present only for integral shifts. */
    std::optional<LogSeries> w0;
    std::optional<LogSeries> w0_tilde;
    /** c(PJ) as a ring element over P and Z3. */
    std::optional<LogSeries::Coeff> gamma_factor;
    /** Number of exponents outside the orthant checked to give vanishing terms. */
    std::size_t support_checked = 0;
    /** Probed exponents outside the orthant whose term has an uncancelled pole and is left undecided. */
    std::size_t support_singular = 0;
};

struct FrobeniusOptions {
    /** How far below zero each exponent is probed for support stability. */
    int negative_window = 2;
    /** Build w0 through gamma_log_expansion as well (requires an integral shift). */
    bool with_w0 = true;
};

/**
 * Cohomology-valued Frobenius series over `ring`, whose generators J_k pair
 * with the chart basis l^(k).  Throws PairingMismatch, NonMaximalChart,
 * SupportUnstable and GammaNotCancelled.
 */
CohomologySeries frobenius_cohomology(const GkzSystem& sys, const ChartBasis& chart, const NilpotentAlgebra& ring,
                                      const Truncation& trunc, const FrobeniusOptions& opt = {});

/** R(n, J) = c(n + J)/c(J) in the ring before the P-grading, or nothing for a pole term. */
std::optional<NilpotentAlgebra::Elem> ratio_element(const GkzSystem& sys, const ChartBasis& chart,
                                                    const RatVec& shift, const NilpotentAlgebra& ring,
                                                    const Exponent& n);

/** Attach P^degree to each basis component. */
LogSeries::Coeff graded_by_p(const NilpotentAlgebra& ring, const NilpotentAlgebra::Elem& e);

struct AnnihilationResult {
    std::string name;
    bool zero = true;
    /** Smallest total degree of a nonzero residual term, when there is one. */
    std::optional<int> first_nonzero;
    LogSeries residual;
};

struct AnnihilationReport {
    std::vector<AnnihilationResult> results;
    bool all_zero() const;
};

/** Apply each operator and record residuals on the series' exact region. */
AnnihilationReport annihilation_check(const std::vector<ThetaOperator>& ops, const LogSeries& series);

/**
 * Dimension of the space of log-free series on the region annihilated by
 * every operator, found by an exact null-space computation.
 */
std::size_t holomorphic_solution_dimension(const std::vector<ThetaOperator>& ops, std::size_t nvars,
                                           const Truncation& trunc);

/** The period Gamma-series sum_n c(n) s^n a^(c + n l) in the variables a, keyed by exponent. */
struct ASeries {
    std::vector<std::pair<RatVec, Rat>> terms;
};

ASeries a_space_series(const GkzSystem& sys, const ChartBasis& chart, const Truncation& trunc);

/**
 * Residuals of the box and Euler operators on the a-space series at every
 * monomial whose preimages lie in the truncation region or outside the
 * orthant, where the series is known exactly.  Returns the number of nonzero
 * residual monomials.
 */
std::size_t a_space_residuals(const GkzSystem& sys, const ChartBasis& chart, const GkzOperators& ops,
                              const Truncation& trunc, std::size_t* checked = nullptr);

/**
 * Surface intersection form eta (symmetric, primitive integral, positive on
 * sum J_k) apolar to the theta-only parts of the given second-order
 * operators.  Throws Error(gkz, RingInference) unless the form is unique.
 */
std::vector<std::vector<Rat>> infer_surface_form(const std::vector<ThetaOperator>& ops, std::size_t s);

}  // namespace toricmirror
