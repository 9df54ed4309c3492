#pragma once

#include "quadctrl/matrix.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace quadctrl {

// Exponent multi-index of a monomial, length = ambient dimension.
using Monomial = std::vector<std::uint8_t>;

// Sparse polynomial with exact rational coefficients. Zero coefficients are
// never stored.
class Polynomial {
public:
    explicit Polynomial(std::size_t n = 0) : n_(n) {}

    static Polynomial constant(std::size_t n, Rational c) {
        Polynomial p(n);
        if (c != 0) p.terms_[Monomial(n, 0)] = std::move(c);
        return p;
    }

    static Polynomial variable(std::size_t n, std::size_t i, Rational coeff = Rational(1)) {
        Polynomial p(n);
        if (coeff != 0) {
            Monomial m(n, 0);
            m[i] = 1;
            p.terms_[std::move(m)] = std::move(coeff);
        }
        return p;
    }

    std::size_t nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out(a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.n_);
                for (std::size_t i = 0; i < a.n_; ++i)
                    m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
                out.add_term(m, ca * cb);
            }
        return out;
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        Polynomial out(p.n_);
        if (s == 0) return out;
        for (const auto& [m, c] : p.terms_) out.terms_[m] = s * c;
        return out;
    }

    Polynomial derivative(std::size_t i) const {
        Polynomial out(n_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d = m;
            d[i] -= 1;
            out.add_term(d, c * Rational(static_cast<long>(m[i])));
        }
        return out;
    }

    Rational eval(const RVec& x) const {
        Rational sum(0);
        for (const auto& [m, c] : terms_) {
            Rational term = c;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::uint8_t e = 0; e < m[i]; ++e) term *= x[i];
            sum += term;
        }
        return sum;
    }

    Rational eval_at_origin() const {
        auto it = terms_.find(Monomial(n_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& [m, c] : terms_) {
            std::size_t md = 0;
            for (auto e : m) md += e;
            d = std::max(d, md);
        }
        return d;
    }

    bool operator==(const Polynomial&) const = default;
    auto operator<=>(const Polynomial&) const = default;

private:
    std::size_t n_;
    std::map<Monomial, Rational> terms_;
};

// Polynomial vector field: n components in n variables.
class PolyVectorField {
public:
    explicit PolyVectorField(std::size_t n = 0) : components_(n, Polynomial(n)) {}

    static PolyVectorField constant(const RVec& v) {
        PolyVectorField f(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            f.components_[i] = Polynomial::constant(v.size(), v[i]);
        return f;
    }

    std::size_t dim() const { return components_.size(); }
    Polynomial& operator[](std::size_t i) { return components_[i]; }
    const Polynomial& operator[](std::size_t i) const { return components_[i]; }

    bool is_zero() const {
        for (const auto& p : components_)
            if (!p.is_zero()) return false;
        return true;
    }

    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& p : components_) d = std::max(d, p.degree());
        return d;
    }

    RVec eval(const RVec& x) const {
        RVec out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out[i] = components_[i].eval(x);
        return out;
    }

    RVec eval_at_origin() const {
        RVec out(dim());
        for (std::size_t i = 0; i < dim(); ++i) out[i] = components_[i].eval_at_origin();
        return out;
    }

    PolyVectorField& operator+=(const PolyVectorField& other) {
        for (std::size_t i = 0; i < dim(); ++i) components_[i] += other.components_[i];
        return *this;
    }

    friend PolyVectorField operator*(const Rational& s, const PolyVectorField& f) {
        PolyVectorField out(f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i) out.components_[i] = s * f.components_[i];
        return out;
    }

    bool operator==(const PolyVectorField&) const = default;
    auto operator<=>(const PolyVectorField&) const = default;

private:
    std::vector<Polynomial> components_;
};

// [f,g](x) = Dg(x) f(x) - Df(x) g(x)
inline PolyVectorField lie_bracket(const PolyVectorField& f, const PolyVectorField& g) {
    const std::size_t n = f.dim();
    if (g.dim() != n) throw std::invalid_argument("lie_bracket: dimension mismatch");
    PolyVectorField out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial acc(n);
        for (std::size_t j = 0; j < n; ++j) {
            Polynomial dg = g[i].derivative(j);
            if (!dg.is_zero() && !f[j].is_zero()) acc += dg * f[j];
            Polynomial df = f[i].derivative(j);
            if (!df.is_zero() && !g[j].is_zero()) acc -= df * g[j];
        }
        out[i] = std::move(acc);
    }
    return out;
}

}  // namespace quadctrl
