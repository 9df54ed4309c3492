#pragma once

#include "quadctrl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace quadctrl {

// Default floating tolerance: n * eps * largest column norm of the input set.
inline double default_tolerance(std::size_t n, const std::vector<DVec>& vectors) {
    double max_norm = 1.0;
    for (const auto& v : vectors) {
        double s = 0.0;
        for (double x : v) s += x * x;
        max_norm = std::max(max_norm, std::sqrt(s));
    }
    return static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_norm;
}

// Linear subspace of R^n held as a row-reduced basis. The zero subspace is
// the empty basis, so rank == basis.size() always.
template <typename T>
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim, double tol = 0.0)
        : ambient_dim_(ambient_dim), tol_(tol) {}

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return basis_.size(); }
    double tol() const { return tol_; }
    const std::vector<Vec<T>>& basis() const { return basis_; }

    bool is_full() const { return rank() == ambient_dim_; }

    // Reduces v against the current basis; returns the residual.
    Vec<T> reduce(Vec<T> v) const {
        if (v.size() != ambient_dim_) throw std::invalid_argument("ambient dimension mismatch");
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            const T& lead = basis_[r][pivots_[r]];
            T factor = v[pivots_[r]] / lead;
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j < ambient_dim_; ++j) v[j] -= factor * basis_[r][j];
        }
        return v;
    }

    bool contains(const Vec<T>& v) const {
        Vec<T> res = reduce(v);
        if constexpr (ScalarOps<T>::exact) {
            return is_zero_vec(res);
        } else {
            double rn = 0.0, vn = 0.0;
            for (std::size_t j = 0; j < res.size(); ++j) {
                rn += ScalarOps<T>::as_double(res[j]) * ScalarOps<T>::as_double(res[j]);
                vn += ScalarOps<T>::as_double(v[j]) * ScalarOps<T>::as_double(v[j]);
            }
            return std::sqrt(rn) <= tol_ * std::max(1.0, std::sqrt(vn));
        }
    }

    // Inserts v if it is independent of the current basis. Returns true when
    // the rank grew. The basis stays in echelon form with distinct pivots.
    bool insert(const Vec<T>& v) {
        Vec<T> res = reduce(v);
        std::optional<std::size_t> pivot;
        if constexpr (ScalarOps<T>::exact) {
            for (std::size_t j = 0; j < ambient_dim_; ++j)
                if (res[j] != T(0)) { pivot = j; break; }
        } else {
            double vn = 0.0;
            for (const auto& x : v) vn += ScalarOps<T>::as_double(x) * ScalarOps<T>::as_double(x);
            double thresh = tol_ * std::max(1.0, std::sqrt(vn));
            double best = thresh;
            for (std::size_t j = 0; j < ambient_dim_; ++j) {
                double m = ScalarOps<T>::magnitude(res[j]);
                if (m > best) { best = m; pivot = j; }
            }
        }
        if (!pivot) return false;
        // Normalize the leading entry and back-substitute into earlier rows.
        T lead = res[*pivot];
        for (std::size_t j = 0; j < ambient_dim_; ++j) res[j] = res[j] / lead;
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            T factor = basis_[r][*pivot];
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j < ambient_dim_; ++j)
                basis_[r][j] -= factor * res[j];
        }
        // Keep rows ordered by pivot column.
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < *pivot) ++pos;
        basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(res));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), *pivot);
        return true;
    }

    bool same_span(const Subspace& other) const {
        if (ambient_dim_ != other.ambient_dim_) return false;
        if (rank() != other.rank()) return false;
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

private:
    std::size_t ambient_dim_;
    double tol_;
    std::vector<Vec<T>> basis_;
    std::vector<std::size_t> pivots_;
};

template <typename T>
Subspace<T> span_basis(std::size_t n, const std::vector<Vec<T>>& vectors, double tol = 0.0) {
    if constexpr (!ScalarOps<T>::exact) {
        if (tol < 0.0) throw std::invalid_argument("negative tolerance");
        if (tol == 0.0) {
            std::vector<DVec> dv;
            for (const auto& v : vectors) {
                DVec d(v.size());
                for (std::size_t i = 0; i < v.size(); ++i) d[i] = ScalarOps<T>::as_double(v[i]);
                dv.push_back(std::move(d));
            }
            tol = default_tolerance(n, dv);
        }
    }
    Subspace<T> s(n, tol);
    for (const auto& v : vectors) {
        if (v.size() != n) throw std::invalid_argument("ambient dimension mismatch");
        s.insert(v);
    }
    return s;
}

template <typename T>
Subspace<T> subspace_sum(const Subspace<T>& a, const Subspace<T>& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch");
    Subspace<T> s = a;
    for (const auto& v : b.basis()) s.insert(v);
    return s;
}

// Generalized cross product: the vector orthogonal to n-1 inputs whose
// components are the signed (n-1)-minors of the stacked input matrix.
// Returns the zero vector when the inputs are dependent.
template <typename T>
Vec<T> hodge_complement(const std::vector<Vec<T>>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("hodge_complement needs n-1 vectors");
    const std::size_t n = vectors.front().size();
    if (vectors.size() != n - 1) throw std::invalid_argument("hodge_complement needs n-1 vectors");
    for (const auto& v : vectors)
        if (v.size() != n) throw std::invalid_argument("ambient dimension mismatch");
    Vec<T> out(n, T(0));
    for (std::size_t drop = 0; drop < n; ++drop) {
        Matrix<T> minor(n - 1, n - 1);
        for (std::size_t i = 0; i < n - 1; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == drop) continue;
                minor(i, jj++) = vectors[i][j];
            }
        }
        T d = determinant(minor);
        out[drop] = (drop % 2 == 0) ? d : -d;
    }
    return out;
}

// Null space of m (right kernel), as a basis of column vectors.
template <typename T>
std::vector<Vec<T>> kernel_basis(const Matrix<T>& m, double tol = 0.0) {
    const std::size_t n = m.cols();
    // Row space of m in reduced echelon form; kernel vectors come from the
    // free columns.
    std::vector<Vec<T>> r;
    for (std::size_t i = 0; i < m.rows(); ++i) r.push_back(m.row(i));
    Subspace<T> rows = span_basis<T>(n, r, tol);
    auto pivot_of = [&](const Vec<T>& b) {
        std::size_t p = 0;
        while (p < n && ScalarOps<T>::is_zero(b[p], rows.tol())) ++p;
        return p;
    };
    std::vector<bool> is_pivot(n, false);
    for (const auto& b : rows.basis()) {
        std::size_t p = pivot_of(b);
        if (p < n) is_pivot[p] = true;
    }
    std::vector<Vec<T>> out;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec<T> kv(n, T(0));
        kv[j] = T(1);
        for (const auto& b : rows.basis()) {
            std::size_t p = pivot_of(b);
            if (p < n) kv[p] = -b[j] / b[p];
        }
        out.push_back(std::move(kv));
    }
    return out;
}

}  // namespace quadctrl
