#pragma once

#include <map>
#include <string>
#include <vector>

#include "toricmirror/arith.hpp"

namespace toricmirror {

/**
 * Variable indices of the scalar coefficient ring.  P stands for 1/(2 pi i),
 * Z3 for zeta(3)/(2 pi i)^3 and L(k) for log(x_k)/(2 pi i).  GAMMA and LN2
 * only occur transiently inside Gamma-function expansions.
 */
namespace sym {
constexpr int P = 0;
constexpr int Z3 = 1;
constexpr int GAMMA = 2;
constexpr int LN2 = 3;
constexpr int L0 = 4;
inline int L(std::size_t k) { return L0 + static_cast<int>(k); }
/** Indeterminates a_ki of the symplectic basis, used by symbolic checks. */
constexpr int A0 = 1000;
constexpr int AStride = 64;
inline int A(std::size_t k, std::size_t i) { return A0 + static_cast<int>(k) * AStride + static_cast<int>(i); }
}  // namespace sym

std::string symbol_name(int var);

/** Sparse multivariate polynomial with rational coefficients. */
class Poly {
public:
    using Monomial = std::vector<int>;

    Poly() = default;
    Poly(const Rat& c);
    Poly(int c) : Poly(Rat(c)) {}
    static Poly var(int v, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    Rat coefficient(const Monomial& m) const;
    int degree_in(int v) const;
    bool depends_on(int v) const { return degree_in(v) > 0; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(int v) const;
    /** Substitute v -> v + shift. */
    Poly shifted(int v, const Rat& shift) const;
    /** Substitute v -> value. */
    Poly evaluated(int v, const Rat& value) const;
    /** Replace v^k by values[k] (a polynomial), dropping powers without a value. */
    Poly substituted(int v, const Poly& value) const;
    /** Part of degree exactly k in v, with v removed. */
    Poly coefficient_of(int v, int k) const;

    std::string str() const;

private:
    static Monomial trim(Monomial m);
    void add_term(Monomial m, const Rat& c);
    std::map<Monomial, Rat> terms_;
};

Poly operator*(const Rat& c, const Poly& p);

/**
 * Finite-dimensional graded commutative algebra with a homogeneous basis,
 * structure constants, generators J_1..J_s and an integration functional
 * reading off the coefficient of the top class.
 */
class NilpotentAlgebra {
public:
    using Elem = std::vector<Rat>;

    NilpotentAlgebra() = default;
    NilpotentAlgebra(std::vector<std::string> labels, std::vector<int> degrees, std::size_t generators);

    /** Threefold ring: basis 1, J_i, b_i (dual to J_i), vol; K[i][j][k] = int J_i J_j J_k. */
    static NilpotentAlgebra threefold(const std::vector<std::vector<std::vector<Rat>>>& k);
    /** Surface ring: basis 1, J_i, vol with J_i J_j = eta_ij vol. */
    static NilpotentAlgebra surface(const std::vector<std::vector<Rat>>& eta);
    /** Curve ring: basis 1, vol with J_k = deg_k vol. */
    static NilpotentAlgebra curve(const std::vector<Rat>& deg);
    /** Polynomials in s variables truncated above total degree d. */
    static NilpotentAlgebra free_truncated(std::size_t s, int d);

    std::size_t dim() const { return labels_.size(); }
    std::size_t generators() const { return gens_.size(); }
    int top_degree() const { return top_; }
    int degree(std::size_t b) const { return degrees_[b]; }
    const std::vector<std::string>& labels() const { return labels_; }
    /** Basis index of the top class used by integrate(), or dim() when there is none. */
    std::size_t top_class() const { return top_index_; }

    void set_product(std::size_t i, std::size_t j, Elem value);
    void set_generator(std::size_t k, Elem value);
    void set_top_class(std::size_t b) { top_index_ = b; }

    Elem zero() const { return Elem(dim(), Rat(0)); }
    Elem one() const;
    Elem basis(std::size_t b) const;
    const Elem& generator(std::size_t k) const { return gens_.at(k); }
    /** sum_k c_k J_k */
    Elem linear_form(const std::vector<Rat>& c) const;

    template <class T>
    std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) const {
        std::vector<T> r(dim(), T(0));
        for (std::size_t i = 0; i < dim(); ++i) {
            if (is_zero_scalar(a[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (is_zero_scalar(b[j])) continue;
                const auto& prod = table_[i * dim() + j];
                if (prod.empty()) continue;
                T ab = a[i] * b[j];
                for (const auto& [c, v] : prod) r[c] += ab * v;
            }
        }
        return r;
    }

    Elem add(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const Rat& c) const;
    Elem power(const Elem& a, int k) const;
    /** exp(a) for nilpotent a (no degree-0 part). */
    Elem exp(const Elem& a) const;
    /** log(a) for a with degree-0 part 1. */
    Elem log(const Elem& a) const;
    /** Inverse of an element with nonzero degree-0 part. */
    Elem inverse(const Elem& a) const;
    Rat integrate(const Elem& a) const;
    /** Part of homogeneous degree k. */
    Elem degree_part(const Elem& a, int k) const;
    bool is_zero(const Elem& a) const;

    /** Matrix of multiplication by a in the standard basis, column convention. */
    RatMat multiplication_matrix(const Elem& a) const;

    /** Throws logic_error unless commutative, associative, graded and J^(d+1) = 0. */
    void check_axioms() const;

    std::string str(const Elem& a) const;

private:
    static bool is_zero_scalar(const Rat& x) { return x == 0; }
    template <class T>
    static bool is_zero_scalar(const T& x) { return x.is_zero(); }

    std::vector<std::string> labels_;
    std::vector<int> degrees_;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> table_;
    std::vector<Elem> gens_;
    int top_ = 0;
    std::size_t top_index_ = 0;
};

}  // namespace toricmirror
