#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricmirror/gkz.hpp"
#include "toricmirror/toricring.hpp"

namespace toricmirror {

/** Todd class 1 + c2/12 of a Calabi-Yau. */
NilpotentAlgebra::Elem todd_class(const NilpotentAlgebra& ring, const NilpotentAlgebra::Elem& c2);

/** (-1)^k on the part of degree 2k, i.e. (-1)^(algebra degree). */
NilpotentAlgebra::Elem dual_sign(const NilpotentAlgebra& ring, const NilpotentAlgebra::Elem& a);

/** <a, b> = int (*a) b Todd. */
Rat rr_pairing(const NilpotentAlgebra::Elem& a, const NilpotentAlgebra::Elem& b, const NilpotentAlgebra& ring,
               const NilpotentAlgebra::Elem& todd);

/**
 * The basis B in period order.  Threefolds: (b0, b1_1..b1_r, b2_r..b2_1, b3)
 * with b0 = 1, b1_i = J_i - (c2 J_i / 12) vol - sum_k a_ki b2_k, b2_j dual to
 * J_j and b3 = -vol.  Curves: (1, -vol).
 */
struct SymplecticBasis {
    NilpotentAlgebra ring;
    NilpotentAlgebra::Elem c2;
    RatMat a;
    bool todd = true;
    std::vector<NilpotentAlgebra::Elem> elements;
    std::vector<std::string> labels;

    /** `todd = false` drops the c2/12 correction (a negative control). */
    static SymplecticBasis build(const NilpotentAlgebra& ring, const NilpotentAlgebra::Elem& c2,
                                 std::optional<RatMat> a = std::nullopt, bool todd = true);
    std::size_t size() const { return elements.size(); }
    /** Columns are the basis elements in the standard ring basis. */
    RatMat matrix() const;
    /** Gram matrix <e_a, e_b> with the Todd pairing. */
    RatMat gram() const;
    /** Matrix of multiplication by x in basis coordinates (column convention). */
    RatMat multiplication(const NilpotentAlgebra::Elem& x) const;
};

/** Sigma = [[0, J], [-J, 0]] with J the antidiagonal of ones, of even size n. */
RatMat standard_sigma(std::size_t n);

/**
 * Pairing table of B on a threefold ring with symmetric indeterminates
 * a_ki = a_ik, as polynomials in those symbols.
 */
std::vector<std::vector<Poly>> symbolic_pairing_table(const NilpotentAlgebra& ring, const NilpotentAlgebra::Elem& c2);

struct PeriodVector {
    std::vector<LogSeries> components;
    std::vector<std::string> labels;
    std::string route;
};

/** Coordinates of the cohomology-valued series w in the basis B (the direct route). */
PeriodVector period_vector(const LogSeries& w, const SymplecticBasis& basis);

/** Coordinates of w in any basis given by the columns of `m`. */
PeriodVector period_vector_in_basis(const LogSeries& w, const RatMat& m, std::vector<std::string> labels);

/**
 * The closed formulas expressing the periods through the Taylor components
 * of w_s in J, with w_s built over a free truncated algebra.
 */
PeriodVector canonical_periods(const GkzSystem& sys, const ChartBasis& chart, const CohomologyRing& ring,
                               const Truncation& trunc, std::optional<RatMat> a = std::nullopt);

/** Multivariate rational power series on a truncation region. */
struct PowerSeries {
    std::size_t nvars = 0;
    Truncation trunc;
    std::map<Exponent, Rat> terms;

    static PowerSeries from_log_series(const LogSeries& s);
    static PowerSeries variable(std::size_t nvars, const Truncation& t, std::size_t k);
    Rat coefficient(const Exponent& e) const;
    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries scaled(const Rat& c) const;
    PowerSeries inverse() const;
    /** exp of a series without constant term. */
    PowerSeries exp() const;
    /** Substitute x_k -> subs[k] (each without constant term). */
    PowerSeries compose(const std::vector<PowerSeries>& subs) const;
    bool operator==(const PowerSeries& o) const;
    std::string str() const;
};

struct MirrorMap {
    /** t_k = Pi1_k / Pi0 = L_k + P h_k. */
    std::vector<LogSeries> t;
    /** The power series h_k. */
    std::vector<PowerSeries> h;
    /** q_k = x_k exp(h_k(x)). */
    std::vector<PowerSeries> q_of_x;
};

/** Needs the log-free Pi0 and Pi1_k = L_k Pi0 + P g_k; throws NotInvertible otherwise. */
MirrorMap mirror_map(const PeriodVector& pv, std::size_t r);

/** x_k(q) by fixed-point reversion of q = x exp(h(x)). */
std::vector<PowerSeries> invert_mirror_map(const MirrorMap& mm);

/** True when q(x(q)) = q on the region. */
bool mirror_round_trip(const MirrorMap& mm, const std::vector<PowerSeries>& x_of_q);

struct MonodromyData {
    std::vector<RatMat> t;
    std::vector<RatMat> n;
};

/** T_k with Pi(L_k + 1) = T_k Pi; throws SolveFailed. */
RatMat lcsl_monodromy(const PeriodVector& pv, std::size_t k);

/**
 * All T_k and N_k = log T_k; throws NotUnipotent.  When `sigma` is given each
 * T_k must preserve it, otherwise Error(periods, NotSymplectic).
 */
MonodromyData monodromy_data(const PeriodVector& pv, std::size_t r, const RatMat* sigma = nullptr);

/** log of a unipotent matrix; throws Error(periods, NotUnipotent). */
RatMat unipotent_log(const RatMat& t);

bool is_symplectic(const RatMat& t, const RatMat& sigma);

struct WeightFiltration {
    int center = 0;
    /** Basis (as matrix columns) of W_0..W_{2 center}. */
    std::vector<RatMat> spaces;
    std::vector<std::size_t> dims;
    /** Gr_0 has dimension 1, W_{2i+1} = W_{2i}, and W_{2 center} is everything. */
    bool lcsl = false;
};

/** Monodromy weight filtration of a nilpotent N centered at `center`; throws NotNilpotent. */
WeightFiltration weight_filtration(const RatMat& n, int center);

bool same_filtration(const WeightFiltration& a, const WeightFiltration& b);

struct MirrorCheck {
    std::size_t k;
    bool pass;
    /** N_k^T - Sigma (-[J_k]) Sigma^-1. */
    RatMat residual;
    /** T_k equals exp([J_k]) in the same coordinates. */
    bool exp_agrees = false;
};

/** N_k^T against Sigma (-[J_k]) Sigma^-1 in the coordinates of `basis`. */
std::vector<MirrorCheck> verify_mirror_isomorphism(const MonodromyData& mono, const SymplecticBasis& basis);

/** int chE * w * Todd as a scalar series. */
LogSeries central_charge(const NilpotentAlgebra::Elem& che, const LogSeries& w, const SymplecticBasis& basis);

}  // namespace toricmirror
