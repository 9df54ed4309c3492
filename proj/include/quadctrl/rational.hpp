#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace quadctrl {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational. Always stored reduced with positive
// denominator. Expression templates are off so arithmetic yields plain
// values that compose with the generic vector and matrix operators.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

enum class Mode { Rational, Float };

inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

// Parses "p", "p/q" or a plain decimal like "-2.5".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(BigInt(digits), den);
}

// Exact bit-for-bit conversion; every finite double is rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp >= 0)
        r *= Rational(BigInt(1) << exp);
    else
        r /= Rational(BigInt(1) << -exp);
    return r;
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Shared scalar interface for the exact and floating backends.
template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return x == 0; }
    static double magnitude(const Rational& x) { return std::abs(to_double(x)); }
    static Rational from_int(long v) { return Rational(v); }
    static double as_double(const Rational& x) { return to_double(x); }
};

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
    static double magnitude(double x) { return std::abs(x); }
    static double from_int(long v) { return static_cast<double>(v); }
    static double as_double(double x) { return x; }
};

}  // namespace quadctrl
