#include "toricmirror/linalg.hpp"

#include <algorithm>
#include <utility>

namespace toricmirror {

RowEchelon rref(const RatMat& a) {
    RowEchelon out{a, {}};
    RatMat& m = out.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

std::size_t rank(const RatMat& a) { return rref(a).pivots.size(); }
std::size_t rank(const IntMat& a) { return rank(to_rat(a)); }

std::size_t rank_of_vectors(const std::vector<IntVec>& vs) {
    if (vs.empty()) return 0;
    return rank(matrix_from_rows(vs, vs[0].size()));
}

std::vector<RatVec> nullspace(const RatMat& a) {
    RowEchelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVec v(a.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {
RatMat augmented(const RatMat& a, const RatVec& b) {
    RatMat m(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        m(i, a.cols()) = b[i];
    }
    return m;
}
}  // namespace

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: length mismatch");
    RowEchelon e = rref(augmented(a, b));
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    RatVec x(a.cols(), Rat(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
    return x;
}

std::optional<RatVec> solve_unique(const RatMat& a, const RatVec& b) {
    if (rank(a) != a.cols()) return std::nullopt;
    return solve(a, b);
}

Rat determinant(const RatMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
    RatMat m = a;
    Rat det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Int determinant(const IntMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        }
        prev = m(k, k);
    }
    Int d = m(n - 1, n - 1);
    return sign > 0 ? d : Int(-d);
}

std::optional<RatMat> inverse(const RatMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
    const std::size_t n = a.rows();
    RatMat m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n + i) = 1;
    }
    RowEchelon e = rref(m);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    RatMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

IntVec SmithForm::invariant_factors() const {
    IntVec f;
    for (std::size_t i = 0; i < rank; ++i) f.push_back(d(i, i));
    return f;
}

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
/** row[dst] += f * row[src] */
void add_row(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
void add_col(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}
void negate_row(IntMat& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
    SmithForm s;
    s.d = a;
    s.u = IntMat::identity(a.rows());
    s.v = IntMat::identity(a.cols());
    IntMat& d = s.d;
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t t = 0;
    while (t < m && t < n) {
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        swap_rows(d, t, pi);
        swap_rows(s.u, t, pi);
        swap_cols(d, t, pj);
        swap_cols(s.v, t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                Int q = floor_div(d(i, t), d(t, t));
                add_row(d, i, t, -q);
                add_row(s.u, i, t, -q);
                if (d(i, t) != 0) {
                    swap_rows(d, t, i);
                    swap_rows(s.u, t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Int q = floor_div(d(t, j), d(t, t));
                add_col(d, j, t, -q);
                add_col(s.v, j, t, -q);
                if (d(t, j) != 0) {
                    swap_cols(d, t, j);
                    swap_cols(s.v, t, j);
                    clean = false;
                }
            }
            if (clean) {
                for (std::size_t i = t + 1; i < m && clean; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (d(i, j) % d(t, t) != 0) {
                            add_row(d, t, i, 1);
                            add_row(s.u, t, i, 1);
                            clean = false;
                            break;
                        }
            }
        }
        if (d(t, t) < 0) {
            negate_row(d, t);
            negate_row(s.u, t);
        }
        ++t;
    }
    s.rank = t;
    return s;
}

IntMat hermite_normal_form(const IntMat& a) {
    IntMat h = a;
    const std::size_t m = h.rows(), n = h.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            std::size_t p = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (p == m || abs(h(i, c)) < abs(h(p, c)))) p = i;
            if (p == m) break;
            swap_rows(h, r, p);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                Int q = floor_div(h(i, c), h(r, c));
                add_row(h, i, r, -q);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) negate_row(h, r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h(i, c), h(r, c));
            add_row(h, i, r, -q);
        }
        ++r;
    }
    IntMat out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
    return out;
}

std::vector<IntVec> integer_kernel(const IntMat& a) {
    SmithForm s = smith_normal_form(a);
    const std::size_t n = a.cols();
    if (s.rank == n) return {};
    IntMat k(n - s.rank, n);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k(j - s.rank, i) = s.v(i, j);
    return rows_of(hermite_normal_form(k));
}

bool is_saturated(const std::vector<IntVec>& rows) {
    if (rows.empty()) return true;
    SmithForm s = smith_normal_form(matrix_from_rows(rows, rows[0].size()));
    for (const auto& f : s.invariant_factors())
        if (f != 1) return false;
    return true;
}

std::optional<RatVec> coordinates_in_basis(const std::vector<IntVec>& basis, const IntVec& v) {
    if (basis.empty()) {
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return RatVec{};
    }
    RatMat b = to_rat(matrix_from_rows(basis, v.size())).transposed();
    return solve_unique(b, to_rat(v));
}

std::vector<IntVec> rows_of(const IntMat& m) {
    std::vector<IntVec> r;
    for (std::size_t i = 0; i < m.rows(); ++i) r.push_back(m.row(i));
    return r;
}

IntMat matrix_from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("matrix_from_rows: ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace toricmirror
