#include "toricmirror/algebra.hpp"

#include <sstream>
#include <stdexcept>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

std::string symbol_name(int var) {
    switch (var) {
        case sym::P: return "P";
        case sym::Z3: return "Z3";
        case sym::GAMMA: return "gamma";
        case sym::LN2: return "ln2";
        default:
            if (var >= sym::A0) {
                int k = (var - sym::A0) / sym::AStride, i = (var - sym::A0) % sym::AStride;
                return "a" + std::to_string(k + 1) + "_" + std::to_string(i + 1);
            }
            return "L" + std::to_string(var - sym::L0 + 1);
    }
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rat& c) {
    if (c == 0) return;
    Rat v = c;
    v.canonicalize();
    terms_[{}] = v;
}

Poly Poly::var(int v, int power) {
    Monomial m(static_cast<std::size_t>(v) + 1, 0);
    m[v] = power;
    Poly p;
    p.terms_[trim(m)] = 1;
    return p;
}

Poly::Monomial Poly::trim(Monomial m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
    return m;
}

void Poly::add_term(Monomial m, const Rat& c) {
    if (c == 0) return;
    m = trim(std::move(m));
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat Poly::constant_term() const { return coefficient({}); }

Rat Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(trim(m));
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::degree_in(int v) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        if (static_cast<std::size_t>(v) < m.size()) d = std::max(d, m[v]);
    return d;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(std::max(ma.size(), mb.size()), 0);
            for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
            for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
            r.add_term(std::move(m), ca * cb);
        }
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    if (c == 0) return {};
    Poly r = *this;
    for (auto& [m, x] : r.terms_) x *= c;
    return r;
}

Poly operator*(const Rat& c, const Poly& p) { return p * c; }

Poly Poly::derivative(int v) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        if (static_cast<std::size_t>(v) >= m.size() || m[v] == 0) continue;
        Monomial n = m;
        --n[v];
        r.add_term(std::move(n), c * m[v]);
    }
    return r;
}

Poly Poly::coefficient_of(int v, int k) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int e = static_cast<std::size_t>(v) < m.size() ? m[v] : 0;
        if (e != k) continue;
        Monomial n = m;
        if (static_cast<std::size_t>(v) < n.size()) n[v] = 0;
        r.add_term(std::move(n), c);
    }
    return r;
}

Poly Poly::substituted(int v, const Poly& value) const {
    int d = degree_in(v);
    std::vector<Poly> powers{Poly(1)};
    for (int k = 1; k <= d; ++k) powers.push_back(powers.back() * value);
    Poly r;
    for (int k = 0; k <= d; ++k) {
        Poly part = coefficient_of(v, k);
        if (!part.is_zero()) r += part * powers[k];
    }
    return r;
}

Poly Poly::shifted(int v, const Rat& shift) const { return substituted(v, var(v) + Poly(shift)); }

Poly Poly::evaluated(int v, const Rat& value) const { return substituted(v, Poly(value)); }

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        } else if (a < 0 && !m.empty()) {
            os << "-";
            a = -a;
        }
        first = false;
        bool has_var = false;
        for (auto e : m) has_var = has_var || e != 0;
        if (!has_var || a != 1) os << to_string(a);
        bool need_star = !has_var || a != 1;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) os << "*";
            os << symbol_name(static_cast<int>(i));
            if (m[i] > 1) os << "^" << m[i];
            need_star = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- NilpotentAlgebra

NilpotentAlgebra::NilpotentAlgebra(std::vector<std::string> labels, std::vector<int> degrees,
                                   std::size_t generators)
    : labels_(std::move(labels)), degrees_(std::move(degrees)) {
    if (labels_.size() != degrees_.size()) throw std::invalid_argument("NilpotentAlgebra: label/degree mismatch");
    table_.assign(dim() * dim(), {});
    gens_.assign(generators, zero());
    for (auto d : degrees_) top_ = std::max(top_, d);
    top_index_ = dim();
    // The unit is always basis element 0.
    for (std::size_t j = 0; j < dim(); ++j) {
        table_[j] = {{j, Rat(1)}};
        table_[j * dim()] = {{j, Rat(1)}};
    }
}

void NilpotentAlgebra::set_product(std::size_t i, std::size_t j, Elem value) {
    std::vector<std::pair<std::size_t, Rat>> sparse;
    for (std::size_t c = 0; c < value.size(); ++c)
        if (value[c] != 0) sparse.emplace_back(c, value[c]);
    table_[i * dim() + j] = sparse;
    table_[j * dim() + i] = sparse;
}

void NilpotentAlgebra::set_generator(std::size_t k, Elem value) { gens_.at(k) = std::move(value); }

NilpotentAlgebra::Elem NilpotentAlgebra::one() const { return basis(0); }

NilpotentAlgebra::Elem NilpotentAlgebra::basis(std::size_t b) const {
    Elem e = zero();
    e.at(b) = 1;
    return e;
}

NilpotentAlgebra::Elem NilpotentAlgebra::linear_form(const std::vector<Rat>& c) const {
    Elem e = zero();
    for (std::size_t k = 0; k < c.size() && k < gens_.size(); ++k)
        if (c[k] != 0) e = add(e, scale(gens_[k], c[k]));
    return e;
}

NilpotentAlgebra NilpotentAlgebra::threefold(const std::vector<std::vector<std::vector<Rat>>>& k) {
    const std::size_t s = k.size();
    std::vector<std::string> labels{"1"};
    std::vector<int> degrees{0};
    for (std::size_t i = 0; i < s; ++i) {
        labels.push_back("J" + std::to_string(i + 1));
        degrees.push_back(1);
    }
    for (std::size_t i = 0; i < s; ++i) {
        labels.push_back("b" + std::to_string(i + 1));
        degrees.push_back(2);
    }
    labels.push_back("vol");
    degrees.push_back(3);
    NilpotentAlgebra a(labels, degrees, s);
    const std::size_t vol = 2 * s + 1;
    for (std::size_t i = 0; i < s; ++i) a.set_generator(i, a.basis(1 + i));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            Elem e = a.zero();
            for (std::size_t l = 0; l < s; ++l) e[1 + s + l] = k[i][j][l];
            a.set_product(1 + i, 1 + j, e);
        }
        for (std::size_t j = 0; j < s; ++j) a.set_product(1 + i, 1 + s + j, i == j ? a.basis(vol) : a.zero());
    }
    a.set_top_class(vol);
    return a;
}

NilpotentAlgebra NilpotentAlgebra::surface(const std::vector<std::vector<Rat>>& eta) {
    const std::size_t s = eta.size();
    std::vector<std::string> labels{"1"};
    std::vector<int> degrees{0};
    for (std::size_t i = 0; i < s; ++i) {
        labels.push_back("J" + std::to_string(i + 1));
        degrees.push_back(1);
    }
    labels.push_back("vol");
    degrees.push_back(2);
    NilpotentAlgebra a(labels, degrees, s);
    for (std::size_t i = 0; i < s; ++i) a.set_generator(i, a.basis(1 + i));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) a.set_product(1 + i, 1 + j, a.scale(a.basis(s + 1), eta[i][j]));
    a.set_top_class(s + 1);
    return a;
}

NilpotentAlgebra NilpotentAlgebra::curve(const std::vector<Rat>& deg) {
    NilpotentAlgebra a({"1", "vol"}, {0, 1}, deg.size());
    for (std::size_t k = 0; k < deg.size(); ++k) a.set_generator(k, a.scale(a.basis(1), deg[k]));
    a.set_top_class(1);
    return a;
}

NilpotentAlgebra NilpotentAlgebra::free_truncated(std::size_t s, int d) {
    std::vector<std::vector<int>> monos{std::vector<int>(s, 0)};
    for (int deg = 1; deg <= d; ++deg) {
        std::vector<std::vector<int>> next;
        // Monomials of degree deg in lex-descending order of exponents.
        std::vector<int> e(s, 0);
        auto rec = [&](auto& self, std::size_t i, int left) -> void {
            if (i + 1 == s) {
                e[i] = left;
                next.push_back(e);
                return;
            }
            for (int x = left; x >= 0; --x) {
                e[i] = x;
                self(self, i + 1, left - x);
            }
        };
        if (s > 0) rec(rec, 0, deg);
        monos.insert(monos.end(), next.begin(), next.end());
    }
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t b = 0; b < monos.size(); ++b) {
        std::string lab;
        int tot = 0;
        for (std::size_t k = 0; k < s; ++k) {
            tot += monos[b][k];
            if (monos[b][k] == 0) continue;
            if (!lab.empty()) lab += "*";
            lab += "u" + std::to_string(k + 1);
            if (monos[b][k] > 1) lab += "^" + std::to_string(monos[b][k]);
        }
        labels.push_back(lab.empty() ? "1" : lab);
        degrees.push_back(tot);
        index[monos[b]] = b;
    }
    NilpotentAlgebra a(labels, degrees, s);
    for (std::size_t i = 1; i < monos.size(); ++i)
        for (std::size_t j = i; j < monos.size(); ++j) {
            if (degrees[i] + degrees[j] > d) {
                a.set_product(i, j, a.zero());
                continue;
            }
            std::vector<int> m(s);
            for (std::size_t k = 0; k < s; ++k) m[k] = monos[i][k] + monos[j][k];
            a.set_product(i, j, a.basis(index.at(m)));
        }
    for (std::size_t k = 0; k < s; ++k) {
        std::vector<int> m(s, 0);
        m[k] = 1;
        if (d >= 1) a.set_generator(k, a.basis(index.at(m)));
    }
    return a;
}

NilpotentAlgebra::Elem NilpotentAlgebra::add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (std::size_t i = 0; i < dim(); ++i) r[i] += b[i];
    return r;
}

NilpotentAlgebra::Elem NilpotentAlgebra::scale(const Elem& a, const Rat& c) const {
    Elem r = a;
    for (auto& x : r) x *= c;
    return r;
}

NilpotentAlgebra::Elem NilpotentAlgebra::power(const Elem& a, int k) const {
    Elem r = one();
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

NilpotentAlgebra::Elem NilpotentAlgebra::exp(const Elem& a) const {
    if (a[0] != 0) throw std::invalid_argument("NilpotentAlgebra::exp: argument has a degree-0 part");
    Elem r = one(), term = one();
    for (int k = 1; k <= top_; ++k) {
        term = scale(mul(term, a), Rat(1, k));
        r = add(r, term);
    }
    return r;
}

NilpotentAlgebra::Elem NilpotentAlgebra::log(const Elem& a) const {
    if (a[0] != 1) throw std::invalid_argument("NilpotentAlgebra::log: degree-0 part must be 1");
    Elem n = a;
    n[0] = 0;
    Elem r = zero(), term = one();
    for (int k = 1; k <= top_; ++k) {
        term = mul(term, n);
        r = add(r, scale(term, Rat(k % 2 == 1 ? 1 : -1, k)));
    }
    return r;
}

NilpotentAlgebra::Elem NilpotentAlgebra::inverse(const Elem& a) const {
    if (a[0] == 0) throw std::invalid_argument("NilpotentAlgebra::inverse: element is nilpotent");
    Rat c = a[0];
    Elem n = scale(a, 1 / c);
    n[0] = 0;
    // (1+n)^-1 = sum (-n)^k
    Elem r = one(), term = one();
    for (int k = 1; k <= top_; ++k) {
        term = scale(mul(term, n), Rat(-1));
        r = add(r, term);
    }
    return scale(r, 1 / c);
}

Rat NilpotentAlgebra::integrate(const Elem& a) const {
    if (top_index_ >= dim()) throw std::logic_error("NilpotentAlgebra::integrate: no top class");
    return a[top_index_];
}

NilpotentAlgebra::Elem NilpotentAlgebra::degree_part(const Elem& a, int k) const {
    Elem r = zero();
    for (std::size_t i = 0; i < dim(); ++i)
        if (degrees_[i] == k) r[i] = a[i];
    return r;
}

bool NilpotentAlgebra::is_zero(const Elem& a) const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

RatMat NilpotentAlgebra::multiplication_matrix(const Elem& a) const {
    RatMat m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        Elem col = mul(a, basis(j));
        for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
    }
    return m;
}

void NilpotentAlgebra::check_axioms() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Elem ij = mul(basis(i), basis(j));
            if (ij != mul(basis(j), basis(i))) throw std::logic_error("algebra table is not commutative");
            for (std::size_t c = 0; c < n; ++c)
                if (ij[c] != 0 && degrees_[c] != degrees_[i] + degrees_[j])
                    throw std::logic_error("algebra table is not graded");
            for (std::size_t k = 0; k < n; ++k)
                if (mul(ij, basis(k)) != mul(basis(i), mul(basis(j), basis(k))))
                    throw std::logic_error("algebra table is not associative");
        }
    for (const auto& g : gens_) {
        if (!is_zero(degree_part(g, 0))) throw std::logic_error("generator has a degree-0 part");
        if (!is_zero(power(g, top_ + 1))) throw std::logic_error("generator is not nilpotent of the top order");
    }
}

std::string NilpotentAlgebra::str(const Elem& a) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << to_string(a[i]);
        if (i != 0) os << "*" << labels_[i];
    }
    return first ? "0" : os.str();
}

}  // namespace toricmirror
