#include "toricmirror/lp.hpp"

namespace toricmirror {

FeasibilityResult feasible_standard_form(const RatMat& a, const RatVec& b) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m) throw std::invalid_argument("feasible_standard_form: length mismatch");
    std::vector<int> flip(m, 1);
    const std::size_t width = n + m + 1;
    const std::size_t rhs = n + m;
    RatMat t(m, width);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) flip[i] = -1;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j) * flip[i];
        t(i, n + i) = 1;
        t(i, rhs) = b[i] * flip[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
    RatVec cost(width, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[j] -= t(i, j);
    for (std::size_t i = 0; i < m; ++i) cost[rhs] -= t(i, rhs);

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < n + m; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;
        std::size_t leave = m;
        Rat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            Rat ratio = t(i, rhs) / t(i, enter);
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot occur in phase one
        Rat piv = t(leave, enter);
        for (std::size_t j = 0; j < width; ++j) t(leave, j) /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            Rat f = t(i, enter);
            for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
        }
        if (cost[enter] != 0) {
            Rat f = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t(leave, j);
        }
        basis[leave] = enter;
    }

    FeasibilityResult res;
    // cost[rhs] holds minus the phase-one objective value.
    if (cost[rhs] == 0) {
        res.feasible = true;
        res.point.assign(n, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) res.point[basis[i]] = t(i, rhs);
        return res;
    }
    res.feasible = false;
    res.farkas.assign(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        Rat y = 1 - cost[n + i];
        res.farkas[i] = -y * flip[i];
    }
    return res;
}

StrictSystemResult solve_strict_system(const RatMat& mm) {
    const std::size_t k = mm.rows(), n = mm.cols();
    RatMat a(k, 2 * n + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = mm(i, j);
            a(i, n + j) = -mm(i, j);
        }
        a(i, 2 * n + i) = -1;
    }
    RatVec ones(k, Rat(1));
    FeasibilityResult f = feasible_standard_form(a, ones);
    StrictSystemResult r;
    r.feasible = f.feasible;
    if (f.feasible) {
        r.solution.assign(n, Rat(0));
        for (std::size_t j = 0; j < n; ++j) r.solution[j] = f.point[j] - f.point[n + j];
    } else {
        Rat total = 0;
        r.dual.assign(k, Rat(0));
        for (std::size_t i = 0; i < k; ++i) {
            r.dual[i] = -f.farkas[i];
            total += r.dual[i];
        }
        for (auto& y : r.dual) y /= total;
    }
    if (!check_strict_certificate(mm, r))
        throw Error("lp", "CertificateInvalid", "simplex produced an invalid certificate");
    return r;
}

bool check_strict_certificate(const RatMat& m, const StrictSystemResult& r) {
    if (r.feasible) {
        if (r.solution.size() != m.cols()) return false;
        RatVec v = m.apply(r.solution);
        for (const auto& x : v)
            if (x < 1) return false;
        return true;
    }
    if (r.dual.size() != m.rows()) return false;
    Rat total = 0;
    for (const auto& y : r.dual) {
        if (y < 0) return false;
        total += y;
    }
    if (total != 1) return false;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Rat s = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += r.dual[i] * m(i, j);
        if (s != 0) return false;
    }
    return true;
}

}  // namespace toricmirror
