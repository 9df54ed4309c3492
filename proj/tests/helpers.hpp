#pragma once

#include "quadctrl/models.hpp"
#include "quadctrl/system.hpp"

#include <optional>
#include <random>

namespace quadctrl::testing {

// Deterministic generator for property tests. Every suite seeds it with a
// fixed constant so failures reproduce.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    long irange(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(eng);
    }

    Rational rat(long lo, long hi) { return Rational(irange(lo, hi)); }

    // Nonzero denominators up to 3 exercise non-integer arithmetic.
    Rational ratq(long lo, long hi) { return Rational(irange(lo, hi), irange(1, 3)); }

    RVec vec(std::size_t n, long lo = -2, long hi = 2) {
        RVec v(n);
        for (auto& x : v) x = rat(lo, hi);
        return v;
    }

    RVec vecq(std::size_t n, long lo = -4, long hi = 4) {
        RVec v(n);
        for (auto& x : v) x = ratq(lo, hi);
        return v;
    }

    RMat mat(std::size_t rows, std::size_t cols, long lo = -2, long hi = 2) {
        RMat m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rat(lo, hi);
        return m;
    }
};

// Random valid system with integer data in [lo, hi]; retries until the
// control columns are independent.
inline RSystem random_system(Rng& rng, std::size_t nmin = 2, std::size_t nmax = 5,
                             long lo = -2, long hi = 2) {
    for (;;) {
        auto n = static_cast<std::size_t>(rng.irange(static_cast<long>(nmin),
                                                     static_cast<long>(nmax)));
        auto k = static_cast<std::size_t>(rng.irange(1, static_cast<long>(n) - 1));
        RMat F = rng.mat(n, n - k, lo, hi);
        if (span_basis<Rational>(n, F.columns()).rank() != n - k) continue;
        return validate_system<Rational>(n, k, rng.mat(n, n, lo, hi), rng.vec(n, lo, hi),
                                         rng.vec(n, lo, hi), rng.vec(n, lo, hi), std::move(F));
    }
}

inline RSystem example_system(const std::string& name) {
    for (const auto& ex : bundled_examples())
        if (ex.name == name) return ex.system;
    throw std::runtime_error("no example named " + name);
}

}  // namespace quadctrl::testing
