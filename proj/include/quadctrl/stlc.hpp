#pragma once

#include "quadctrl/chain.hpp"
#include "quadctrl/verdict.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadctrl {

// ---------------------------------------------------------------------------
// Semidefiniteness of a symmetric matrix, decided from the signs of the
// elementary symmetric functions of the eigenvalues (sums of principal
// minors), computed by the Faddeev-LeVerrier recursion. Exact in rational
// mode.
// ---------------------------------------------------------------------------

template <typename T>
std::vector<T> principal_minor_sums(const Matrix<T>& q) {
    const std::size_t n = q.rows();
    // Newton's identities: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i with
    // power sums p_i = tr(q^i) and e_0 = 1.
    std::vector<T> power_sums;  // p_1 .. p_n
    Matrix<T> m = q;
    for (std::size_t i = 1; i <= n; ++i) {
        T tr(0);
        for (std::size_t d = 0; d < n; ++d) tr += m(d, d);
        power_sums.push_back(tr);
        if (i < n) m = m * q;
    }
    std::vector<T> e{T(1)};  // e[k] = e_k
    for (std::size_t k = 1; k <= n; ++k) {
        T acc(0);
        for (std::size_t i = 1; i <= k; ++i) {
            T term = e[k - i] * power_sums[i - 1];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        e.push_back(acc / ScalarOps<T>::from_int(static_cast<long>(k)));
    }
    return std::vector<T>(e.begin() + 1, e.end());
}

template <typename T>
bool is_positive_semidefinite(const Matrix<T>& q, double tol = 0.0) {
    for (const auto& c : principal_minor_sums(q)) {
        if (ScalarOps<T>::is_zero(c, tol)) continue;
        if (c < T(0)) return false;
    }
    return true;
}

template <typename T>
bool is_semidefinite(const Matrix<T>& q, double tol = 0.0) {
    Matrix<T> neg(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) neg(i, j) = -q(i, j);
    return is_positive_semidefinite(q, tol) || is_positive_semidefinite(neg, tol);
}

// Symmetric coefficient matrix of the scalar quadratic form x -> w^T Phi(x).
template <typename T>
Matrix<T> functional_quadratic_form(const QuadraticSystem<T>& sys, const Vec<T>& w) {
    Matrix<T> q(sys.n, sys.n);
    T half = T(1) / T(2);
    for (std::size_t mu = 0; mu < sys.n; ++mu)
        for (std::size_t nu = mu; nu < sys.n; ++nu) {
            T v = half * dot(w, psi(sys, unit_vec<T>(sys.n, mu), unit_vec<T>(sys.n, nu)));
            q(mu, nu) = v;
            q(nu, mu) = v;
        }
    return q;
}

// ---------------------------------------------------------------------------
// Individual rules
// ---------------------------------------------------------------------------

// Controllability of the linearization at the origin (drift linear part L,
// input matrix F), which is sufficient for small-time local controllability.
template <typename T>
bool linearization_stlc(const QuadraticSystem<T>& sys) {
    return kalman_rank(sys.L, sys.F, sys.tol);
}

// Rank-1-underactuation rule (k = 1): with S_1 full, either a non-L-invariant
// S_0 or Phi mapping every control into S_0 certifies controllability; a
// deficient S_1 certifies the opposite.
template <typename T>
Verdict sigma1_stlc(const QuadraticSystem<T>& sys) {
    if (sys.k != 1) throw std::invalid_argument("sigma1_stlc requires k == 1");
    auto chain = s_chain(sys);
    Verdict v;
    v.rule = "rank1-underactuation";
    if (chain.degree_of_reachability < sys.n) {
        v.tag = VerdictTag::NotStlc;
        v.description = "the reachable subspace chain stalls below full dimension";
        v.certificate["dims"] = chain.dims;
        v.certificate["basis"] = basis_to_json(chain.final());
        v.certificate["branch"] = "rank-deficient";
        return v;
    }
    Subspace<T> s0 = span_basis<T>(sys.n, sys.F.columns(), sys.tol);
    std::optional<std::size_t> moving;  // basis column with L b outside S_0
    for (std::size_t i = 0; i < sys.num_controls(); ++i) {
        if (!s0.contains(sys.L * sys.control(i))) { moving = i; break; }
    }
    if (moving) {
        v.tag = VerdictTag::Stlc;
        v.description = "full chain and the control span is not invariant under the linear drift";
        v.certificate["branch"] = "drift-moves-control-span";
        v.certificate["witness_control"] = *moving;
        return v;
    }
    bool phi_inside = true;
    for (std::size_t i = 0; i < sys.num_controls(); ++i)
        if (!s0.contains(phi(sys, sys.control(i)))) { phi_inside = false; break; }
    if (phi_inside) {
        v.tag = VerdictTag::Stlc;
        v.description =
            "full chain and the quadratic drift maps every control field into the control span";
        v.certificate["branch"] = "phi-into-control-span";
        return v;
    }
    v.tag = VerdictTag::Inconclusive;
    v.description = "chain is full but neither controllability hypothesis holds";
    return v;
}

struct HermesSussmannCertificate {
    Json phi_f;
    Json krylov_basis;
};

// Single-input necessary condition: [f1,[f0,f1]](0) = 2 Phi(f1) must lie in
// the span of the brackets using f1 at most once, here the Krylov space
// span{f1, L f1, ..., L^{n-1} f1}. A violation rules controllability out.
template <typename T>
std::optional<HermesSussmannCertificate> hermes_sussmann_obstruction(
    const QuadraticSystem<T>& sys) {
    if (sys.k != sys.n - 1)
        throw std::invalid_argument("hermes_sussmann_obstruction requires a single input");
    Vec<T> f1 = sys.control(0);
    std::vector<Vec<T>> krylov;
    Vec<T> v = f1;
    for (std::size_t l = 0; l < sys.n; ++l) {
        krylov.push_back(v);
        v = sys.L * v;
    }
    Subspace<T> w = span_basis<T>(sys.n, krylov, sys.tol);
    Vec<T> bracket = T(2) * phi(sys, f1);
    if (w.contains(bracket)) return std::nullopt;
    HermesSussmannCertificate cert;
    cert.phi_f = vec_to_json(bracket);
    cert.krylov_basis = basis_to_json(w);
    return cert;
}

// Single-input system with identically vanishing linear drift part is never
// controllable: either the obstruction above fires or the chain is deficient.
template <typename T>
std::optional<Verdict> zero_L_single_input(const QuadraticSystem<T>& sys) {
    if (sys.k != sys.n - 1) return std::nullopt;
    if (!sys.L.is_zero()) return std::nullopt;
    Vec<T> f1 = sys.control(0);
    Subspace<T> line = span_basis<T>(sys.n, {f1}, sys.tol);
    Verdict v;
    v.tag = VerdictTag::NotStlc;
    v.rule = "zero-linear-drift";
    v.description = "single input with no linear drift part";
    Vec<T> pf = phi(sys, f1);
    if (!line.contains(pf)) {
        v.certificate["cause"] = "bracket-obstruction";
        v.certificate["phi_f"] = vec_to_json(pf);
    } else {
        v.certificate["cause"] = "not-accessible";
    }
    v.certificate["f"] = vec_to_json(f1);
    return v;
}

// Searches for a nonzero functional w with w^T F = 0, w^T L = 0 and
// w^T Phi semidefinite and not identically zero; such a w is monotone along
// every trajectory, so the origin cannot be interior to its reachable set.
template <typename T>
std::optional<Vec<T>> monotone_certificate(const QuadraticSystem<T>& sys) {
    std::vector<Vec<T>> rows;
    for (std::size_t j = 0; j < sys.num_controls(); ++j) rows.push_back(sys.control(j));
    for (std::size_t j = 0; j < sys.n; ++j) rows.push_back(sys.L.column(j));
    auto kernel = kernel_basis(matrix_cast_rows(rows), sys.tol);
    if (kernel.empty()) return std::nullopt;

    std::vector<Vec<T>> candidates = kernel;
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = i + 1; j < kernel.size(); ++j) {
            candidates.push_back(kernel[i] + kernel[j]);
            candidates.push_back(kernel[i] - kernel[j]);
        }
    if (kernel.size() == 2) {
        for (long alpha = 1; alpha <= 2; ++alpha)
            for (long beta = -2; beta <= 2; ++beta) {
                if (beta == 0 || (alpha == 1 && (beta == 1 || beta == -1))) continue;
                candidates.push_back(ScalarOps<T>::from_int(alpha) * kernel[0] +
                                     ScalarOps<T>::from_int(beta) * kernel[1]);
            }
    }
    for (const auto& w : candidates) {
        Matrix<T> q = functional_quadratic_form(sys, w);
        if (q.is_zero()) continue;
        if (is_semidefinite(q, sys.tol)) return w;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Structural model detection (exact pattern match on L, a, b, c)
// ---------------------------------------------------------------------------

template <typename T>
struct SprottParams {
    T mu;
};

template <typename T>
std::optional<SprottParams<T>> detect_sprott(const QuadraticSystem<T>& sys) {
    if (sys.n != 3) return std::nullopt;
    for (std::size_t i = 0; i < 3; ++i)
        if (!(sys.a[i] == T(1) && sys.b[i] == T(0) && sys.c[i] == T(0))) return std::nullopt;
    T mu = -sys.L(0, 0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            T expected = (i == j) ? -mu : (j == (i + 2) % 3 ? T(-1) : T(0));
            if (!(sys.L(i, j) == expected)) return std::nullopt;
        }
    return SprottParams<T>{mu};
}

template <typename T>
struct LorenzParams {
    T sigma, rho, beta;
    T s() const { return beta * beta - (sigma + T(1)) * beta + sigma * (T(1) - rho); }
    T d_squared() const { return T(4) * rho * sigma + (sigma - T(1)) * (sigma - T(1)); }
};

template <typename T>
std::optional<LorenzParams<T>> detect_lorenz(const QuadraticSystem<T>& sys) {
    if (sys.n != 3) return std::nullopt;
    if (!(sys.c[0] == T(0) && sys.c[1] == T(-1) && sys.c[2] == T(1))) return std::nullopt;
    for (std::size_t i = 0; i < 3; ++i)
        if (!(sys.a[i] == T(0) && sys.b[i] == T(0))) return std::nullopt;
    T sigma = -sys.L(0, 0), rho = sys.L(1, 0), beta = -sys.L(2, 2);
    Matrix<T> expected{{-sigma, sigma, T(0)}, {rho, T(-1), T(0)}, {T(0), T(0), -beta}};
    if (!(sys.L == expected)) return std::nullopt;
    auto pos = [](const T& x) { return ScalarOps<T>::as_double(x) > 0.0; };
    if (!pos(sigma) || !pos(rho) || !pos(beta)) return std::nullopt;
    return LorenzParams<T>{sigma, rho, beta};
}

// Hessian of x^2+y^2+z^2-(yz+zx+xy); its kernel is the diagonal.
template <typename T>
Matrix<T> sprott_quadratic_hessian() {
    return Matrix<T>{{T(2), T(-1), T(-1)}, {T(-1), T(2), T(-1)}, {T(-1), T(-1), T(2)}};
}

// Hessian of rho x^2 - sigma y^2 + (sigma-1)xy; its isotropic cone joined
// with the z-axis-orthogonal plane is the obstruction locus.
template <typename T>
Matrix<T> lorenz_quadratic_hessian(const LorenzParams<T>& p) {
    return Matrix<T>{{T(2) * p.rho, p.sigma - T(1), T(0)},
                     {p.sigma - T(1), T(-2) * p.sigma, T(0)},
                     {T(0), T(0), T(0)}};
}

// Single-input verdict for the Sprott pattern. Requires the system to be
// accessible or not per the diagonal test; decisive in every case.
template <typename T>
Verdict sprott_closed_form_verdict(const QuadraticSystem<T>& sys) {
    Vec<T> f = sys.control(0);
    T s1 = dot(f, Vec<T>(3, T(1)));
    T q = dot(f, sprott_quadratic_hessian<T>() * f);
    Verdict v;
    v.rule = "sprott-closed-form";
    v.certificate["f"] = vec_to_json(f);
    v.certificate["diagonal_component"] = scalar_to_json(s1);
    v.certificate["quadratic_form"] = scalar_to_json(q);
    bool on_diagonal = ScalarOps<T>::is_zero(q, sys.tol);
    bool orthogonal = ScalarOps<T>::is_zero(s1, sys.tol);
    if (on_diagonal) {
        v.tag = VerdictTag::NotAccessible;
        v.description = "control lies on the diagonal; the chain never leaves it";
    } else if (orthogonal) {
        v.tag = VerdictTag::NotStlc;
        v.description =
            "control orthogonal to the diagonal: accessible, but the quadratic bracket "
            "escapes the Krylov space of the linearization";
        v.certificate["accessible"] = true;
    } else {
        v.tag = VerdictTag::Stlc;
        v.description = "linearization is controllable (nonzero Krylov determinant)";
    }
    return v;
}

struct InapplicableModelRule : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single-input verdict for the Lorenz pattern; only valid when the spectral
// constant s is nonzero.
template <typename T>
Verdict lorenz_closed_form_verdict(const QuadraticSystem<T>& sys, const LorenzParams<T>& p) {
    if (ScalarOps<T>::is_zero(p.s(), sys.tol))
        throw InapplicableModelRule("degenerate spectral constant (s = 0)");
    Vec<T> f = sys.control(0);
    T f3 = f[2];
    T q = dot(f, lorenz_quadratic_hessian(p) * f);
    Verdict v;
    v.rule = "lorenz-closed-form";
    v.certificate["f"] = vec_to_json(f);
    v.certificate["f3"] = scalar_to_json(f3);
    v.certificate["quadratic_form"] = scalar_to_json(q);
    v.certificate["s"] = scalar_to_json(p.s());
    bool f3_zero = ScalarOps<T>::is_zero(f3, sys.tol);
    bool q_zero = ScalarOps<T>::is_zero(q, sys.tol);
    if (!f3_zero && !q_zero) {
        v.tag = VerdictTag::Stlc;
        v.description = "linearization is controllable (nonzero Krylov determinant)";
        return v;
    }
    auto chain = s_chain(sys);
    if (chain.degree_of_reachability < sys.n) {
        v.tag = VerdictTag::NotAccessible;
        v.description = "chain stalls below full dimension";
        v.certificate["dims"] = chain.dims;
    } else {
        v.tag = VerdictTag::NotStlc;
        v.description = "control meets the obstruction locus of the quadratic bracket";
        v.certificate["accessible"] = true;
    }
    return v;
}

// ---------------------------------------------------------------------------
// The cascade
// ---------------------------------------------------------------------------

// Greedy choice of n independent Krylov columns, for the linearization
// certificate.
template <typename T>
Json linearization_certificate(const QuadraticSystem<T>& sys) {
    Subspace<T> s(sys.n, sys.tol);
    Json picks = Json::array();
    Matrix<T> power = sys.F;
    for (std::size_t l = 0; l < sys.n && !s.is_full(); ++l) {
        for (std::size_t j = 0; j < sys.F.cols(); ++j)
            if (s.insert(power.column(j))) picks.push_back({l, j});
        power = sys.L * power;
    }
    Json cert;
    cert["krylov_columns"] = picks;
    return cert;
}

template <typename T>
Verdict stlc_verdict(const QuadraticSystem<T>& sys) {
    std::vector<std::string> attempted;

    // 1. accessibility is necessary for any form of controllability
    attempted.push_back("chain-rank");
    auto access = accessibility_verdict(sys);
    if (access.tag == VerdictTag::NotAccessible) {
        Verdict v;
        v.tag = VerdictTag::NotAccessible;
        v.rule = "chain-rank";
        v.description = "subspace chain stalls below full dimension";
        v.certificate["degree_of_reachability"] = access.degree_of_reachability;
        v.certificate["dims"] = access.chain.dims;
        v.certificate["basis"] = basis_to_json(access.chain.final());
        v.rules_attempted = attempted;
        return v;
    }

    // 2. controllable linearization
    attempted.push_back("linearization");
    if (linearization_stlc(sys)) {
        Verdict v;
        v.tag = VerdictTag::Stlc;
        v.rule = "linearization";
        v.description = "linearization at the origin is controllable";
        v.certificate = linearization_certificate(sys);
        v.rules_attempted = attempted;
        return v;
    }

    // 3. model-specific closed forms (single input only)
    if (sys.num_controls() == 1) {
        if (detect_sprott(sys)) {
            attempted.push_back("sprott-closed-form");
            Verdict v = sprott_closed_form_verdict(sys);
            v.rules_attempted = attempted;
            return v;
        }
        if (auto lorenz = detect_lorenz(sys)) {
            if (!ScalarOps<T>::is_zero(lorenz->s(), sys.tol)) {
                attempted.push_back("lorenz-closed-form");
                Verdict v = lorenz_closed_form_verdict(sys, *lorenz);
                v.rules_attempted = attempted;
                return v;
            }
        }
    }

    // 4. single input, no linear drift
    attempted.push_back("zero-linear-drift");
    if (auto v = zero_L_single_input(sys)) {
        v->rules_attempted = attempted;
        return *v;
    }

    // 5. single-input bracket obstruction
    if (sys.k == sys.n - 1) {
        attempted.push_back("hermes-sussmann");
        if (auto cert = hermes_sussmann_obstruction(sys)) {
            Verdict v;
            v.tag = VerdictTag::NotStlc;
            v.rule = "hermes-sussmann";
            v.description =
                "the second-order bracket escapes the span of single-occurrence brackets";
            v.certificate["phi_f"] = cert->phi_f;
            v.certificate["krylov_basis"] = cert->krylov_basis;
            v.rules_attempted = attempted;
            return v;
        }
    }

    // 6. rank-1 underactuation
    if (sys.k == 1) {
        attempted.push_back("rank1-underactuation");
        Verdict v = sigma1_stlc(sys);
        if (v.decisive()) {
            v.rules_attempted = attempted;
            return v;
        }
    }

    // 7. monotone functional
    attempted.push_back("monotone-functional");
    if (auto w = monotone_certificate(sys)) {
        Verdict v;
        v.tag = VerdictTag::NotStlc;
        v.rule = "monotone-functional";
        v.description = "a linear functional of the state is monotone along every trajectory";
        v.certificate["w"] = vec_to_json(*w);
        v.rules_attempted = attempted;
        return v;
    }

    Verdict v;
    v.tag = VerdictTag::Inconclusive;
    v.rule = "none";
    v.description = "no decisive rule applied";
    v.rules_attempted = attempted;
    return v;
}

}  // namespace quadctrl
