#pragma once

#include "quadctrl/subspace.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace quadctrl {

struct SystemError : std::runtime_error {
    enum class Kind { ShapeMismatch, DependentControls, BadRank, BadParameter };
    SystemError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

// Cyclic shift x -> (x_{1+s}, ..., x_n, x_1, ..., x_s); s=1 and s=2 are the
// two permutations used by the quadratic part.
template <typename T>
Vec<T> cyclic_shift(const Vec<T>& x, unsigned s) {
    const std::size_t n = x.size();
    Vec<T> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[(i + s) % n];
    return out;
}

// Affine control system with drift Lx + Phi(x) and constant control fields
// (columns of F). Phi is the homogeneous quadratic map built from a, b, c.
template <typename T>
struct QuadraticSystem {
    std::size_t n = 0;  // state dimension
    std::size_t k = 0;  // underactuation rank; n-k independent controls
    Matrix<T> L;
    Vec<T> a, b, c;
    Matrix<T> F;  // n x (n-k), columns are the control fields
    double tol = 0.0;

    std::size_t num_controls() const { return n - k; }
    Vec<T> control(std::size_t i) const { return F.column(i); }
};

using RSystem = QuadraticSystem<Rational>;
using DSystem = QuadraticSystem<double>;

template <typename T>
QuadraticSystem<T> validate_system(std::size_t n, std::size_t k, Matrix<T> L, Vec<T> a,
                                   Vec<T> b, Vec<T> c, Matrix<T> F, double tol = 0.0) {
    if (n < 2)
        throw SystemError(SystemError::Kind::BadRank, "state dimension must be at least 2");
    if (k < 1 || k > n - 1)
        throw SystemError(SystemError::Kind::BadRank,
                          "underactuation rank k must satisfy 1 <= k <= n-1");
    if (L.rows() != n || L.cols() != n)
        throw SystemError(SystemError::Kind::ShapeMismatch, "L must be n x n");
    if (a.size() != n || b.size() != n || c.size() != n)
        throw SystemError(SystemError::Kind::ShapeMismatch, "a, b, c must have length n");
    if (F.rows() != n || F.cols() != n - k)
        throw SystemError(SystemError::Kind::ShapeMismatch, "F must be n x (n-k)");
    if (span_basis<T>(n, F.columns(), tol).rank() != n - k)
        throw SystemError(SystemError::Kind::DependentControls,
                          "control fields must be linearly independent");
    return QuadraticSystem<T>{n, k, std::move(L), std::move(a), std::move(b), std::move(c),
                              std::move(F), tol};
}

// Symmetric bilinear map:
//   Psi(u,v) = 2a.P2u.P2v + 2b.P3u.P3v + c.P2u.P3v + c.P2v.P3u
template <typename T>
Vec<T> psi(const QuadraticSystem<T>& sys, const Vec<T>& u, const Vec<T>& v) {
    if (u.size() != sys.n || v.size() != sys.n)
        throw std::invalid_argument("psi: dimension mismatch");
    Vec<T> p2u = cyclic_shift(u, 1), p3u = cyclic_shift(u, 2);
    Vec<T> p2v = cyclic_shift(v, 1), p3v = cyclic_shift(v, 2);
    Vec<T> out(sys.n);
    for (std::size_t i = 0; i < sys.n; ++i)
        out[i] = T(2) * sys.a[i] * p2u[i] * p2v[i] + T(2) * sys.b[i] * p3u[i] * p3v[i] +
                 sys.c[i] * (p2u[i] * p3v[i] + p2v[i] * p3u[i]);
    return out;
}

// Quadratic map Phi(u) = Psi(u,u)/2; component v is
// a_v u_{v+1}^2 + b_v u_{v+2}^2 + c_v u_{v+1} u_{v+2} with cyclic indices.
template <typename T>
Vec<T> phi(const QuadraticSystem<T>& sys, const Vec<T>& x) {
    if (x.size() != sys.n) throw std::invalid_argument("phi: dimension mismatch");
    Vec<T> p2 = cyclic_shift(x, 1), p3 = cyclic_shift(x, 2);
    Vec<T> out(sys.n);
    for (std::size_t i = 0; i < sys.n; ++i)
        out[i] = sys.a[i] * p2[i] * p2[i] + sys.b[i] * p3[i] * p3[i] + sys.c[i] * p2[i] * p3[i];
    return out;
}

// Jacobian of Phi at p; satisfies DPhi(p) v = Psi(p, v).
template <typename T>
Matrix<T> dphi(const QuadraticSystem<T>& sys, const Vec<T>& p) {
    if (p.size() != sys.n) throw std::invalid_argument("dphi: dimension mismatch");
    Matrix<T> out(sys.n, sys.n);
    for (std::size_t j = 0; j < sys.n; ++j) {
        Vec<T> col = psi(sys, p, unit_vec<T>(sys.n, j));
        for (std::size_t i = 0; i < sys.n; ++i) out(i, j) = col[i];
    }
    return out;
}

template <typename T>
Vec<T> drift(const QuadraticSystem<T>& sys, const Vec<T>& x) {
    return sys.L * x + phi(sys, x);
}

template <typename T>
Vec<T> vector_field(const QuadraticSystem<T>& sys, const Vec<T>& x, const Vec<T>& u) {
    Vec<T> out = drift(sys, x);
    for (std::size_t i = 0; i < sys.num_controls(); ++i)
        for (std::size_t row = 0; row < sys.n; ++row) out[row] += u[i] * sys.F(row, i);
    return out;
}

inline DSystem to_double_system(const RSystem& sys, double tol = 0.0) {
    return DSystem{sys.n, sys.k, to_double_mat(sys.L), to_double_vec(sys.a),
                   to_double_vec(sys.b), to_double_vec(sys.c), to_double_mat(sys.F), tol};
}

inline RSystem rationalize_system(const DSystem& sys) {
    auto rvec = [](const DVec& v) {
        RVec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = rational_from_double(v[i]);
        return out;
    };
    RMat L(sys.n, sys.n), F(sys.n, sys.num_controls());
    for (std::size_t i = 0; i < sys.n; ++i) {
        for (std::size_t j = 0; j < sys.n; ++j) L(i, j) = rational_from_double(sys.L(i, j));
        for (std::size_t j = 0; j < sys.num_controls(); ++j)
            F(i, j) = rational_from_double(sys.F(i, j));
    }
    return RSystem{sys.n, sys.k, std::move(L), rvec(sys.a), rvec(sys.b), rvec(sys.c),
                   std::move(F), 0.0};
}

}  // namespace quadctrl
