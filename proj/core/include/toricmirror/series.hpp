#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricmirror/algebra.hpp"

namespace toricmirror {

using Exponent = std::vector<int>;

/**
 * A down-closed region of the nonnegative exponent orthant: an optional cap on
 * the total degree plus optional per-variable caps.  Series values inside the
 * region are exact; operators that only raise exponents keep that property.
 */
struct Truncation {
    std::optional<int> total;
    std::vector<int> caps;

    static Truncation total_degree(int n) { return Truncation{n, {}}; }
    static Truncation box(std::vector<int> caps) { return Truncation{std::nullopt, std::move(caps)}; }

    bool contains(const Exponent& e) const;
    /** Largest exponent of variable k allowed in a vector of length s. */
    int max_in(std::size_t k) const;
    /** Every nonnegative exponent in the region, lexicographically sorted. */
    std::vector<Exponent> points(std::size_t s) const;
    /** Largest total degree attained in the region. */
    int max_total(std::size_t s) const;
    std::string str() const;
};

/**
 * Truncated series sum_n x^(n + offset) * (f_n), where each f_n is a vector of
 * polynomials in P, Z3, L_1..L_s indexed by a basis of a nilpotent algebra
 * (dimension 1 for scalar series).
 */
class LogSeries {
public:
    using Coeff = std::vector<Poly>;

    LogSeries() = default;
    LogSeries(std::size_t nvars, std::size_t dim, Truncation trunc, RatVec offsets = {});

    std::size_t nvars() const { return nvars_; }
    std::size_t dim() const { return dim_; }
    const Truncation& truncation() const { return trunc_; }
    const RatVec& offsets() const { return offsets_; }
    const std::map<Exponent, Coeff>& terms() const { return terms_; }

    /** Add c to component b at exponent e; terms outside the truncation are dropped. */
    void add(const Exponent& e, std::size_t b, const Poly& c);
    void add(const Exponent& e, const Coeff& c);
    Poly coefficient(const Exponent& e, std::size_t b = 0) const;
    Coeff coefficients(const Exponent& e) const;

    /** Scalar series of one basis component. */
    LogSeries component(std::size_t b) const;
    /** Same terms with a smaller region. */
    LogSeries truncated(const Truncation& t) const;

    LogSeries operator+(const LogSeries& o) const;
    LogSeries operator-(const LogSeries& o) const;
    LogSeries scaled(const Poly& c) const;
    /** Coefficient-wise product of two scalar series. */
    LogSeries operator*(const LogSeries& o) const;
    /** Multiply by x^m and drop terms leaving the region. */
    LogSeries shifted(const Exponent& m) const;
    /** theta_k = x_k d/dx_k, with theta_k L_k = P. */
    LogSeries theta(std::size_t k) const;
    /** Substitute L_k -> L_k + s in every coefficient. */
    LogSeries shift_log(std::size_t k, const Rat& s) const;
    /** Apply a map to every coefficient polynomial. */
    template <class F>
    LogSeries map_coefficients(F f) const {
        LogSeries r(nvars_, dim_, trunc_, offsets_);
        for (const auto& [e, c] : terms_)
            for (std::size_t b = 0; b < dim_; ++b) r.add(e, b, f(c[b]));
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    bool mentions(int var) const;
    int log_degree() const;
    /** Exponents with a nonzero coefficient, sorted. */
    std::vector<Exponent> support() const;
    std::string str(const std::vector<std::string>& labels = {}) const;

private:
    std::size_t nvars_ = 0;
    std::size_t dim_ = 1;
    Truncation trunc_;
    RatVec offsets_;
    std::map<Exponent, Coeff> terms_;
};

/** The linear differential form c + sum_k a_k theta_k. */
struct ThetaForm {
    Rat constant;
    std::vector<Rat> coeffs;

    std::string str() const;
};

/** scalar * x^shift * prod(factors). */
struct OperatorTerm {
    Exponent shift;
    Rat scalar = 1;
    std::vector<ThetaForm> factors;
};

/** Polynomial differential operator in x_k and theta_k with x on the left. */
struct ThetaOperator {
    std::string name;
    std::size_t nvars = 0;
    std::vector<OperatorTerm> terms;

    LogSeries apply(const LogSeries& f) const;
    /** Largest total x-degree among the terms. */
    int shift_degree() const;
    /** Largest number of theta factors among the terms. */
    int order() const;
    std::string str() const;
};

}  // namespace toricmirror
