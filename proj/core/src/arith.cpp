#include "toricmirror/arith.hpp"

#include <sstream>

namespace toricmirror {

Error::Error(std::string module, std::string code, const std::string& what)
    : std::runtime_error(module + "/" + code + ": " + what),
      module_(std::move(module)),
      code_(std::move(code)) {}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    return c.get_str();
}

Int parse_int(const std::string& s) {
    Int r;
    if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: '" + s + "'");
    return r;
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

RatVec to_rat(const IntVec& v) {
    RatVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

bool is_integral(const Rat& x) { return x.get_den() == 1; }

bool is_integral(const RatVec& v) {
    for (const auto& x : v)
        if (!is_integral(x)) return false;
    return true;
}

IntVec to_int(const RatVec& v) {
    IntVec r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (!is_integral(x)) throw std::invalid_argument("non-integral entry " + to_string(x));
        r.push_back(x.get_num());
    }
    return r;
}

Int gcd_of(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

IntVec primitive(const IntVec& v) {
    Int g = gcd_of(v);
    if (g == 0) return v;
    IntVec r = v;
    for (auto& x : r) x /= g;
    return r;
}

IntVec primitive(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, x.get_den());
    IntVec r;
    r.reserve(v.size());
    for (const auto& x : v) {
        Rat y = x * l;
        r.push_back(y.get_num());
    }
    return primitive(r);
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

namespace {
template <class V>
std::string join(const V& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    os << ")";
    return os.str();
}
}  // namespace

std::string to_string(const IntVec& v) { return join(v); }
std::string to_string(const RatVec& v) { return join(v); }

}  // namespace toricmirror
