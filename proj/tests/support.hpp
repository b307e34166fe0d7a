#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "toricmirror/corpus.hpp"

namespace toricmirror::testing {

inline IntVec iv(std::initializer_list<long> l) {
    IntVec r;
    for (long x : l) r.push_back(Int(x));
    return r;
}

inline RatVec rv(std::initializer_list<long> l) {
    RatVec r;
    for (long x : l) r.push_back(Rat(x));
    return r;
}

inline LatticePolytope p4_simplex(const IntVec& last) {
    return LatticePolytope::from_vertices({iv({1, 0, 0, 0}), iv({0, 1, 0, 0}), iv({0, 0, 1, 0}), iv({0, 0, 0, 1}), last});
}

/** Delta* of the quintic, the fan polytope of P4. */
inline LatticePolytope quintic_star() { return p4_simplex(iv({-1, -1, -1, -1})); }

/** Built models are shared across tests of one binary; building p4xp4 or the K3 takes a while. */
inline const FixtureModel& model(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<FixtureModel>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[name];
    if (!slot) slot = std::make_unique<FixtureModel>(build_model(load_fixture(name)));
    return *slot;
}

inline Rat ratio(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.module() + "/" + e.code();
    }
    return "";
}

}  // namespace toricmirror::testing

namespace toricmirror {
inline void PrintTo(const Poly& p, std::ostream* os) { *os << p.str(); }
}  // namespace toricmirror
