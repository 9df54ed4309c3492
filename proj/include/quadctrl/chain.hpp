#pragma once

#include "quadctrl/system.hpp"

#include <cstddef>
#include <vector>

namespace quadctrl {

enum class VerdictTag { StronglyAccessible, NotAccessible, Stlc, NotStlc, Inconclusive };

inline const char* to_string(VerdictTag t) {
    switch (t) {
        case VerdictTag::StronglyAccessible: return "StronglyAccessible";
        case VerdictTag::NotAccessible: return "NotAccessible";
        case VerdictTag::Stlc: return "Stlc";
        case VerdictTag::NotStlc: return "NotStlc";
        case VerdictTag::Inconclusive: return "Inconclusive";
    }
    return "?";
}

// The fundamental subspace chain S_0 <= S_1 <= ... <= S_k:
//   S_0     = span of the control fields,
//   S_{l+1} = S_l + span{ L w, Phi(w) : w in S_l }.
// Always records k+1 subspaces, repeating the stationary one.
template <typename T>
struct ChainResult {
    std::vector<Subspace<T>> subspaces;
    std::vector<std::size_t> dims;
    std::size_t stationary_at = 0;       // first l with dim S_l == dim S_{l+1}
    std::size_t degree_of_reachability;  // dim S_k

    const Subspace<T>& final() const { return subspaces.back(); }
};

// One recursion step. Phi restricted to a subspace is captured on a basis by
// Phi(b_i) and the polarized values Psi(b_i, b_j), i < j.
template <typename T>
Subspace<T> chain_step(const QuadraticSystem<T>& sys, const Subspace<T>& s) {
    Subspace<T> next = s;
    const auto& basis = s.basis();
    for (const auto& b : basis) {
        next.insert(sys.L * b);
        next.insert(phi(sys, b));
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            next.insert(psi(sys, basis[i], basis[j]));
    return next;
}

template <typename T>
ChainResult<T> s_chain(const QuadraticSystem<T>& sys) {
    ChainResult<T> result;
    Subspace<T> s = span_basis<T>(sys.n, sys.F.columns(), sys.tol);
    result.subspaces.push_back(s);
    result.dims.push_back(s.rank());
    bool stationary_found = false;
    for (std::size_t lambda = 0; lambda < sys.k; ++lambda) {
        Subspace<T> next = chain_step(sys, s);
        if (!stationary_found && next.rank() == s.rank()) {
            result.stationary_at = lambda;
            stationary_found = true;
        }
        s = std::move(next);
        result.subspaces.push_back(s);
        result.dims.push_back(s.rank());
    }
    if (!stationary_found) result.stationary_at = sys.k;
    result.degree_of_reachability = result.dims.back();
    return result;
}

template <typename T>
struct AccessibilityVerdict {
    VerdictTag tag;
    std::size_t degree_of_reachability;
    ChainResult<T> chain;
};

template <typename T>
AccessibilityVerdict<T> accessibility_verdict(const QuadraticSystem<T>& sys) {
    ChainResult<T> chain = s_chain(sys);
    VerdictTag tag = chain.degree_of_reachability == sys.n ? VerdictTag::StronglyAccessible
                                                          : VerdictTag::NotAccessible;
    return AccessibilityVerdict<T>{tag, chain.degree_of_reachability, std::move(chain)};
}

// Rank test on the controllability matrix [B | LB | ... | L^{n-1}B].
template <typename T>
bool kalman_rank(const Matrix<T>& L, const Matrix<T>& B, double tol = 0.0) {
    if (L.rows() != L.cols() || B.rows() != L.rows())
        throw std::invalid_argument("kalman_rank: shape mismatch");
    const std::size_t n = L.rows();
    std::vector<Vec<T>> cols;
    Matrix<T> power = B;
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j < B.cols(); ++j) cols.push_back(power.column(j));
        power = L * power;
    }
    return span_basis<T>(n, cols, tol).is_full();
}

}  // namespace quadctrl
