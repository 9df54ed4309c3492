#pragma once

#include "quadctrl/stlc.hpp"

#include <string>
#include <vector>

namespace quadctrl {

namespace detail {

inline Rational scalar_from_json(const Json& v, Rational*) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    return rational_from_double(v.get<double>());
}

inline double scalar_from_json(const Json& v, double*) {
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    return v.get<double>();
}

template <typename T>
Vec<T> vec_from_json(const Json& arr) {
    Vec<T> out;
    for (const auto& v : arr) out.push_back(scalar_from_json(v, static_cast<T*>(nullptr)));
    return out;
}

}  // namespace detail

// Re-checks a verdict's certificate through a route independent of the rule
// that produced it. Returns false when the certificate does not support the
// claim.
template <typename T>
bool validate_certificate(const QuadraticSystem<T>& sys, const Verdict& verdict) {
    const std::size_t n = sys.n;
    const auto& cert = verdict.certificate;

    if (verdict.rule == "chain-rank") {
        if (verdict.tag != VerdictTag::NotAccessible) return false;
        // The certified basis must contain the controls and be closed under
        // L and the quadratic map; then the whole chain stays inside it.
        auto basis_json = cert.at("basis");
        std::vector<Vec<T>> basis;
        for (const auto& b : basis_json) basis.push_back(detail::vec_from_json<T>(b));
        if (basis.size() >= n) return false;
        Subspace<T> w = span_basis<T>(n, basis, sys.tol);
        for (std::size_t i = 0; i < sys.num_controls(); ++i)
            if (!w.contains(sys.control(i))) return false;
        for (const auto& b : w.basis()) {
            if (!w.contains(sys.L * b)) return false;
            if (!w.contains(phi(sys, b))) return false;
        }
        for (std::size_t i = 0; i < w.basis().size(); ++i)
            for (std::size_t j = i + 1; j < w.basis().size(); ++j)
                if (!w.contains(psi(sys, w.basis()[i], w.basis()[j]))) return false;
        return w.rank() < n;
    }

    if (verdict.rule == "linearization") {
        if (verdict.tag != VerdictTag::Stlc) return false;
        auto picks = cert.at("krylov_columns");
        if (picks.size() != n) return false;
        Matrix<T> m(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t l = picks[col][0].get<std::size_t>();
            std::size_t j = picks[col][1].get<std::size_t>();
            Vec<T> v = sys.control(j);
            for (std::size_t s = 0; s < l; ++s) v = sys.L * v;
            for (std::size_t row = 0; row < n; ++row) m(row, col) = v[row];
        }
        return !ScalarOps<T>::is_zero(determinant(m), sys.tol);
    }

    if (verdict.rule == "sprott-closed-form" || verdict.rule == "lorenz-closed-form") {
        Vec<T> f = detail::vec_from_json<T>(cert.at("f"));
        Matrix<T> krylov(3, 3);
        Vec<T> v = f;
        for (std::size_t col = 0; col < 3; ++col) {
            for (std::size_t row = 0; row < 3; ++row) krylov(row, col) = v[row];
            v = sys.L * v;
        }
        T det = determinant(krylov);
        bool controllable = !ScalarOps<T>::is_zero(det, sys.tol);
        switch (verdict.tag) {
            case VerdictTag::Stlc:
                return controllable;
            case VerdictTag::NotStlc: {
                if (controllable) return false;
                if (verdict.rule == "sprott-closed-form") {
                    // the quadratic bracket must escape the Krylov space
                    Subspace<T> w = span_basis<T>(3, krylov.columns(), sys.tol);
                    return !w.contains(phi(sys, f));
                }
                return true;
            }
            case VerdictTag::NotAccessible:
                return !controllable;
            default:
                return false;
        }
    }

    if (verdict.rule == "zero-linear-drift") {
        if (verdict.tag != VerdictTag::NotStlc) return false;
        if (!sys.L.is_zero() || sys.k != sys.n - 1) return false;
        Vec<T> f1 = sys.control(0);
        Subspace<T> line = span_basis<T>(n, {f1}, sys.tol);
        if (cert.at("cause") == "bracket-obstruction")
            return !line.contains(phi(sys, f1));
        return s_chain(sys).degree_of_reachability < n;
    }

    if (verdict.rule == "hermes-sussmann") {
        if (verdict.tag != VerdictTag::NotStlc) return false;
        Vec<T> f1 = sys.control(0);
        std::vector<Vec<T>> cols;
        Vec<T> v = f1;
        for (std::size_t l = 0; l < n; ++l) {
            cols.push_back(v);
            v = sys.L * v;
        }
        std::size_t base_rank = span_basis<T>(n, cols, sys.tol).rank();
        cols.push_back(T(2) * phi(sys, f1));
        return span_basis<T>(n, cols, sys.tol).rank() > base_rank;
    }

    if (verdict.rule == "rank1-underactuation") {
        if (sys.k != 1) return false;
        auto chain = s_chain(sys);
        if (verdict.tag == VerdictTag::NotStlc)
            return chain.degree_of_reachability < n;
        if (verdict.tag != VerdictTag::Stlc) return false;
        if (chain.degree_of_reachability != n) return false;
        Subspace<T> s0 = span_basis<T>(n, sys.F.columns(), sys.tol);
        std::string branch = cert.at("branch");
        if (branch == "drift-moves-control-span") {
            std::size_t i = cert.at("witness_control").get<std::size_t>();
            return !s0.contains(sys.L * sys.control(i));
        }
        if (branch == "phi-into-control-span") {
            for (std::size_t i = 0; i < sys.num_controls(); ++i)
                if (!s0.contains(phi(sys, sys.control(i)))) return false;
            return true;
        }
        return false;
    }

    if (verdict.rule == "monotone-functional") {
        if (verdict.tag != VerdictTag::NotStlc) return false;
        Vec<T> w = detail::vec_from_json<T>(cert.at("w"));
        if (is_zero_vec(w, sys.tol)) return false;
        for (std::size_t i = 0; i < sys.num_controls(); ++i)
            if (!ScalarOps<T>::is_zero(dot(w, sys.control(i)), sys.tol)) return false;
        for (std::size_t j = 0; j < n; ++j)
            if (!ScalarOps<T>::is_zero(dot(w, sys.L.column(j)), sys.tol)) return false;
        // Sample the form on a deterministic grid: a semidefinite, nonzero
        // form shows one strict sign and no sign change.
        bool saw_pos = false, saw_neg = false;
        std::vector<long> point(n, -2);
        while (true) {
            Vec<T> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = ScalarOps<T>::from_int(point[i]);
            T val = dot(w, phi(sys, x));
            if (!ScalarOps<T>::is_zero(val, sys.tol)) {
                if (val < T(0))
                    saw_neg = true;
                else
                    saw_pos = true;
            }
            std::size_t i = 0;
            while (i < n && point[i] == 2) point[i++] = -2;
            if (i == n) break;
            ++point[i];
        }
        return (saw_pos || saw_neg) && !(saw_pos && saw_neg);
    }

    return false;
}

}  // namespace quadctrl
