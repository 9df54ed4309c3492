#pragma once

#include "quadctrl/stlc.hpp"
#include "quadctrl/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadctrl {

// L = -(mu I + P3), a = (1,1,1), b = c = 0.
template <typename T>
QuadraticSystem<T> sprott(const T& mu, const std::vector<Vec<T>>& controls, double tol = 0.0) {
    if (controls.empty() || controls.size() > 2)
        throw SystemError(SystemError::Kind::BadRank, "sprott takes 1 or 2 control vectors");
    Matrix<T> L(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        L(i, i) = -mu;
        L(i, (i + 2) % 3) = L(i, (i + 2) % 3) + T(-1);
    }
    return validate_system<T>(3, 3 - controls.size(), std::move(L), Vec<T>(3, T(1)),
                              Vec<T>(3, T(0)), Vec<T>(3, T(0)),
                              Matrix<T>::from_columns(controls), tol);
}

template <typename T>
QuadraticSystem<T> lorenz(const T& sigma, const T& rho, const T& beta,
                          const std::vector<Vec<T>>& controls, double tol = 0.0) {
    auto pos = [](const T& x) { return ScalarOps<T>::as_double(x) > 0.0; };
    if (!pos(sigma) || !pos(rho) || !pos(beta))
        throw SystemError(SystemError::Kind::BadParameter, "lorenz parameters must be positive");
    if (controls.empty() || controls.size() > 2)
        throw SystemError(SystemError::Kind::BadRank, "lorenz takes 1 or 2 control vectors");
    Matrix<T> L{{-sigma, sigma, T(0)}, {rho, T(-1), T(0)}, {T(0), T(0), -beta}};
    Vec<T> c{T(0), T(-1), T(1)};
    return validate_system<T>(3, 3 - controls.size(), std::move(L), Vec<T>(3, T(0)),
                              Vec<T>(3, T(0)), std::move(c), Matrix<T>::from_columns(controls),
                              tol);
}

// Euler angular-velocity dynamics with principal moments xi: L = 0 and
// c_v = (xi_{v+1} - xi_{v+2}) / xi_v. When controls are raw torques b_i the
// caller sets scale_torques and the fields become Delta_{1/xi} b_i.
template <typename T>
QuadraticSystem<T> rigid_body(const Vec<T>& xi, std::vector<Vec<T>> controls,
                              bool scale_torques = false, double tol = 0.0) {
    if (xi.size() != 3)
        throw SystemError(SystemError::Kind::ShapeMismatch, "xi must have length 3");
    for (const auto& x : xi)
        if (!(ScalarOps<T>::as_double(x) > 0.0))
            throw SystemError(SystemError::Kind::BadParameter,
                              "principal moments must be positive");
    if (controls.empty() || controls.size() > 2)
        throw SystemError(SystemError::Kind::BadRank, "rigid_body takes 1 or 2 control vectors");
    if (scale_torques)
        for (auto& b : controls)
            for (std::size_t i = 0; i < 3; ++i) b[i] = b[i] / xi[i];
    Vec<T> c(3);
    for (std::size_t v = 0; v < 3; ++v) c[v] = (xi[(v + 1) % 3] - xi[(v + 2) % 3]) / xi[v];
    return validate_system<T>(3, 3 - controls.size(), Matrix<T>(3, 3), Vec<T>(3, T(0)),
                              Vec<T>(3, T(0)), std::move(c), Matrix<T>::from_columns(controls),
                              tol);
}

// Spectral constants of the Lorenz linear part. s and d^2 are exact; d and
// the eigen-direction vectors involve a square root and are kept as floats.
struct LorenzConstants {
    Rational s;
    Rational d_squared;
    double d;
    DVec v_plus, v_minus, w_plus, w_minus;
};

inline LorenzConstants lorenz_constants(const Rational& sigma, const Rational& rho,
                                        const Rational& beta) {
    LorenzParams<Rational> p{sigma, rho, beta};
    LorenzConstants out;
    out.s = p.s();
    out.d_squared = p.d_squared();
    out.d = std::sqrt(to_double(out.d_squared));
    double sd = to_double(sigma), rd = to_double(rho);
    out.v_plus = {1.0, (sd - 1.0 + out.d) / (2.0 * sd), 0.0};
    out.v_minus = {1.0, (sd - 1.0 - out.d) / (2.0 * sd), 0.0};
    out.w_plus = {(1.0 - sd + out.d) / (2.0 * rd), 1.0, 0.0};
    out.w_minus = {(1.0 - sd - out.d) / (2.0 * rd), 1.0, 0.0};
    return out;
}

template <typename T>
Verdict sprott_single_input_stlc(const T& mu, const Vec<T>& f, double tol = 0.0) {
    if (is_zero_vec(f, tol)) throw std::invalid_argument("zero control vector");
    return sprott_closed_form_verdict(sprott<T>(mu, {f}, tol));
}

// Throws InapplicableModelRule when the spectral constant vanishes; callers
// then fall back to the generic cascade.
template <typename T>
Verdict lorenz_single_input_stlc(const T& sigma, const T& rho, const T& beta, const Vec<T>& f,
                                 double tol = 0.0) {
    auto sys = lorenz<T>(sigma, rho, beta, {f}, tol);
    auto params = detect_lorenz(sys);
    return lorenz_closed_form_verdict(sys, *params);
}

template <typename T>
Matrix<T> skew_matrix(const Vec<T>& x) {
    return Matrix<T>{{T(0), x[2], -x[1]}, {-x[2], T(0), x[0]}, {x[1], -x[0], T(0)}};
}

// Rank condition on torque axes and gyroscopic terms: the probe set
// {b1, b2, b1+b2} captures the quadratic map on the torque plane.
template <typename T>
bool crouch_condition(const Vec<T>& xi, const Vec<T>& b1, const Vec<T>& b2, double tol = 0.0) {
    for (const auto& x : xi)
        if (!(ScalarOps<T>::as_double(x) > 0.0))
            throw SystemError(SystemError::Kind::BadParameter,
                              "principal moments must be positive");
    if (span_basis<T>(3, {b1, b2}, tol).rank() != 2)
        throw SystemError(SystemError::Kind::DependentControls, "torque axes must be independent");
    std::vector<Vec<T>> gens{b1, b2};
    for (const Vec<T>& omega : {b1, b2, b1 + b2}) {
        Vec<T> scaled(3);
        for (std::size_t i = 0; i < 3; ++i) scaled[i] = omega[i] / xi[i];
        gens.push_back(skew_matrix(omega) * scaled);
    }
    return span_basis<T>(3, gens, tol).is_full();
}

struct NamedSystem {
    std::string name;
    std::string summary;
    RSystem system;
};

// Small catalog of worked systems exercised throughout the test suite.
inline std::vector<NamedSystem> bundled_examples() {
    std::vector<NamedSystem> out;
    {
        RMat L(5, 5);
        L(1, 1) = 1;
        L(2, 2) = -1;
        L(3, 4) = 1;
        RVec b{0, 0, 0, -1, -1}, c{0, 0, 1, 0, 1};
        RMat F = RMat::from_columns({unit_vec<Rational>(5, 0)});
        out.push_back({"r5-nonaccessible",
                       "five-state single-input system whose reachable subspace is a plane",
                       validate_system<Rational>(5, 4, L, RVec(5, 0), b, c, F)});
    }
    {
        RMat L(3, 3);
        RVec b{0, 0, 1};
        RMat F = RMat::from_columns({unit_vec<Rational>(3, 0), unit_vec<Rational>(3, 1)});
        out.push_back({"sprott-counterexample-flow",
                       "accessible two-input system with a monotone third coordinate",
                       validate_system<Rational>(3, 1, L, RVec(3, 0), b, RVec(3, 0), F)});
    }
    {
        RMat L(3, 3);
        L(0, 0) = 2;
        L(2, 2) = -1;
        RVec a{0, 0, 1}, b{0, 1, 1}, c{-1, -2, 0};
        RMat F = RMat::from_columns({unit_vec<Rational>(3, 1), unit_vec<Rational>(3, 2)});
        out.push_back({"r3-stlc",
                       "two-input system controllable through its quadratic part only",
                       validate_system<Rational>(3, 1, L, a, b, c, F)});
    }
    {
        RMat L(3, 3);
        RVec c{1, 1, 1};
        RMat F = RMat::from_columns({RVec{1, 2, 3}});
        out.push_back({"hypergraph",
                       "driftless-linear single-input system with fully symmetric quadratic part",
                       validate_system<Rational>(3, 2, L, RVec(3, 0), RVec(3, 0), c, F)});
    }
    return out;
}

}  // namespace quadctrl
