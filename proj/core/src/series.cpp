#include "toricmirror/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace toricmirror {

// ---------------------------------------------------------------- Truncation

bool Truncation::contains(const Exponent& e) const {
    int tot = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] < 0) return false;
        if (k < caps.size() && e[k] > caps[k]) return false;
        tot += e[k];
    }
    return !total || tot <= *total;
}

int Truncation::max_in(std::size_t k) const {
    int m = -1;
    if (k < caps.size()) m = caps[k];
    if (total) m = m < 0 ? *total : std::min(m, *total);
    if (m < 0) throw std::logic_error("Truncation: unbounded region");
    return m;
}

int Truncation::max_total(std::size_t s) const {
    int sum = 0;
    for (std::size_t k = 0; k < s; ++k) sum += max_in(k);
    return total ? std::min(*total, sum) : sum;
}

std::vector<Exponent> Truncation::points(std::size_t s) const {
    std::vector<Exponent> out;
    Exponent e(s, 0);
    auto rec = [&](auto& self, std::size_t k, int used) -> void {
        if (k == s) {
            out.push_back(e);
            return;
        }
        int hi = max_in(k);
        if (total) hi = std::min(hi, *total - used);
        for (int x = 0; x <= hi; ++x) {
            e[k] = x;
            self(self, k + 1, used + x);
        }
        e[k] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

std::string Truncation::str() const {
    std::ostringstream os;
    if (total) os << "total<=" << *total;
    if (!caps.empty()) {
        if (total) os << ",";
        os << "caps=(";
        for (std::size_t k = 0; k < caps.size(); ++k) os << (k ? "," : "") << caps[k];
        os << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------- LogSeries

LogSeries::LogSeries(std::size_t nvars, std::size_t dim, Truncation trunc, RatVec offsets)
    : nvars_(nvars), dim_(dim), trunc_(std::move(trunc)), offsets_(std::move(offsets)) {
    if (offsets_.empty()) offsets_.assign(nvars_, Rat(0));
    if (offsets_.size() != nvars_) throw std::invalid_argument("LogSeries: offset length mismatch");
}

void LogSeries::add(const Exponent& e, std::size_t b, const Poly& c) {
    if (c.is_zero() || !trunc_.contains(e)) return;
    if (e.size() != nvars_) throw std::invalid_argument("LogSeries: exponent length mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) it = terms_.emplace(e, Coeff(dim_)).first;
    it->second.at(b) += c;
    for (const auto& x : it->second)
        if (!x.is_zero()) return;
    terms_.erase(it);
}

void LogSeries::add(const Exponent& e, const Coeff& c) {
    for (std::size_t b = 0; b < c.size(); ++b) add(e, b, c[b]);
}

Poly LogSeries::coefficient(const Exponent& e, std::size_t b) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Poly() : it->second.at(b);
}

LogSeries::Coeff LogSeries::coefficients(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(dim_) : it->second;
}

LogSeries LogSeries::component(std::size_t b) const {
    LogSeries r(nvars_, 1, trunc_, offsets_);
    for (const auto& [e, c] : terms_) r.add(e, 0, c.at(b));
    return r;
}

LogSeries LogSeries::truncated(const Truncation& t) const {
    LogSeries r(nvars_, dim_, t, offsets_);
    for (const auto& [e, c] : terms_) r.add(e, c);
    return r;
}

static void check_compatible(const LogSeries& a, const LogSeries& b) {
    if (a.nvars() != b.nvars() || a.dim() != b.dim() || a.offsets() != b.offsets())
        throw std::invalid_argument("LogSeries: incompatible operands");
}

LogSeries LogSeries::operator+(const LogSeries& o) const {
    check_compatible(*this, o);
    LogSeries r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e, c);
    return r;
}

LogSeries LogSeries::operator-(const LogSeries& o) const { return *this + o.scaled(Poly(-1)); }

LogSeries LogSeries::scaled(const Poly& s) const {
    return map_coefficients([&](const Poly& c) { return c * s; });
}

LogSeries LogSeries::operator*(const LogSeries& o) const {
    if (dim_ != 1 || o.dim_ != 1 || nvars_ != o.nvars_) throw std::invalid_argument("LogSeries: product needs scalar series");
    RatVec off(nvars_);
    for (std::size_t k = 0; k < nvars_; ++k) off[k] = offsets_[k] + o.offsets_[k];
    LogSeries r(nvars_, 1, trunc_, off);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exponent e(nvars_);
            for (std::size_t k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
            if (!trunc_.contains(e) || !o.trunc_.contains(e)) continue;
            r.add(e, 0, ca[0] * cb[0]);
        }
    return r;
}

LogSeries LogSeries::shifted(const Exponent& m) const {
    LogSeries r(nvars_, dim_, trunc_, offsets_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        for (std::size_t k = 0; k < nvars_; ++k) f[k] += m[k];
        r.add(f, c);
    }
    return r;
}

LogSeries LogSeries::theta(std::size_t k) const {
    LogSeries r(nvars_, dim_, trunc_, offsets_);
    const Poly p = Poly::var(sym::P);
    for (const auto& [e, c] : terms_) {
        Rat a = Rat(e[k]) + offsets_[k];
        for (std::size_t b = 0; b < dim_; ++b) r.add(e, b, c[b] * a + p * c[b].derivative(sym::L(k)));
    }
    return r;
}

LogSeries LogSeries::shift_log(std::size_t k, const Rat& s) const {
    return map_coefficients([&](const Poly& c) { return c.shifted(sym::L(k), s); });
}

bool LogSeries::mentions(int var) const {
    for (const auto& [e, c] : terms_)
        for (const auto& x : c)
            if (x.depends_on(var)) return true;
    return false;
}

int LogSeries::log_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_)
        for (const auto& x : c)
            for (const auto& [m, v] : x.terms()) {
                int tot = 0;
                for (std::size_t i = sym::L0; i < std::min<std::size_t>(m.size(), sym::A0); ++i) tot += m[i];
                d = std::max(d, tot);
            }
    return d;
}

std::vector<Exponent> LogSeries::support() const {
    std::vector<Exponent> out;
    for (const auto& [e, c] : terms_) out.push_back(e);
    return out;
}

std::string LogSeries::str(const std::vector<std::string>& labels) const {
    std::ostringstream os;
    for (const auto& [e, c] : terms_) {
        os << "x^(";
        for (std::size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
        os << "):";
        for (std::size_t b = 0; b < dim_; ++b) {
            if (c[b].is_zero()) continue;
            os << " [" << (b < labels.size() ? labels[b] : std::to_string(b)) << "] " << c[b].str();
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- operators

std::string ThetaForm::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Rat a = coeffs[k];
        if (a == 0) continue;
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        if (a < 0) a = -a;
        if (a != 1) os << to_string(a) << "*";
        os << "th" << k + 1;
        first = false;
    }
    if (constant != 0 || first) {
        Rat c = constant;
        if (!first) os << (c < 0 ? " - " : " + ");
        if (!first && c < 0) c = -c;
        os << to_string(c);
    }
    return os.str();
}

LogSeries ThetaOperator::apply(const LogSeries& f) const {
    LogSeries out(f.nvars(), f.dim(), f.truncation(), f.offsets());
    for (const auto& t : terms) {
        LogSeries g = f;
        for (const auto& form : t.factors) {
            LogSeries h = g.scaled(Poly(form.constant));
            for (std::size_t k = 0; k < form.coeffs.size(); ++k)
                if (form.coeffs[k] != 0) h = h + g.theta(k).scaled(Poly(form.coeffs[k]));
            g = std::move(h);
        }
        out = out + g.shifted(t.shift).scaled(Poly(t.scalar));
    }
    return out;
}

int ThetaOperator::shift_degree() const {
    int d = 0;
    for (const auto& t : terms) {
        int s = 0;
        for (auto x : t.shift) s += x;
        d = std::max(d, s);
    }
    return d;
}

int ThetaOperator::order() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, static_cast<int>(t.factors.size()));
    return d;
}

std::string ThetaOperator::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        Rat s = t.scalar;
        os << (first ? (s < 0 ? "-" : "") : (s < 0 ? " - " : " + "));
        if (s < 0) s = -s;
        first = false;
        bool printed = false;
        if (s != 1) {
            os << to_string(s);
            printed = true;
        }
        for (std::size_t k = 0; k < t.shift.size(); ++k) {
            if (t.shift[k] == 0) continue;
            os << (printed ? "*" : "") << "x" << k + 1;
            if (t.shift[k] > 1) os << "^" << t.shift[k];
            printed = true;
        }
        for (const auto& form : t.factors) {
            os << (printed ? "*" : "") << "(" << form.str() << ")";
            printed = true;
        }
        if (!printed) os << "1";
    }
    return os.str();
}

}  // namespace toricmirror
