#pragma once

#include "quadctrl/chain.hpp"
#include "quadctrl/poly.hpp"
#include "quadctrl/system.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quadctrl {

struct BracketLimitExceeded : std::runtime_error {
    explicit BracketLimitExceeded(std::size_t cap)
        : std::runtime_error("bracket enumeration cap exceeded (" + std::to_string(cap) + ")") {}
};

// The drift Lx + Phi(x) as an exact polynomial vector field.
inline PolyVectorField drift_field(const RSystem& sys) {
    const std::size_t n = sys.n;
    PolyVectorField f(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial p(n);
        for (std::size_t j = 0; j < n; ++j)
            p += Polynomial::variable(n, j, sys.L(i, j));
        std::size_t i1 = (i + 1) % n, i2 = (i + 2) % n;
        p += sys.a[i] * (Polynomial::variable(n, i1) * Polynomial::variable(n, i1));
        p += sys.b[i] * (Polynomial::variable(n, i2) * Polynomial::variable(n, i2));
        p += sys.c[i] * (Polynomial::variable(n, i1) * Polynomial::variable(n, i2));
        f[i] = std::move(p);
    }
    return f;
}

inline std::vector<PolyVectorField> generator_fields(const RSystem& sys) {
    std::vector<PolyVectorField> gen;
    gen.push_back(drift_field(sys));
    for (std::size_t i = 0; i < sys.num_controls(); ++i)
        gen.push_back(PolyVectorField::constant(sys.control(i)));
    return gen;
}

namespace detail {

// Exact linear span of polynomial vector fields, kept in echelon form over
// (component, monomial) coordinates. Reducing each bracket frontier to a
// basis keeps the enumeration from exploding: brackets are bilinear, so
// spanning fields generate the same values as the full word list.
class FieldSpan {
public:
    bool insert(PolyVectorField f) {
        while (!f.is_zero()) {
            auto key = leading_key(f);
            auto it = rows_.find(key);
            if (it == rows_.end()) {
                Rational lead = f[key.first].terms().at(key.second);
                rows_.emplace(std::move(key), Rational(1) / lead * f);
                return true;
            }
            Rational coeff = f[key.first].terms().at(key.second);
            PolyVectorField scaled = (-coeff) * it->second;
            f += scaled;
        }
        return false;
    }

    std::vector<PolyVectorField> basis() const {
        std::vector<PolyVectorField> out;
        out.reserve(rows_.size());
        for (const auto& [k, f] : rows_) out.push_back(f);
        return out;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    using Key = std::pair<std::size_t, Monomial>;

    static Key leading_key(const PolyVectorField& f) {
        for (std::size_t i = 0; i < f.dim(); ++i)
            if (!f[i].is_zero()) return {i, f[i].terms().begin()->first};
        throw std::logic_error("leading_key of zero field");
    }

    std::map<Key, PolyVectorField> rows_;
};

}  // namespace detail

struct OracleOptions {
    std::size_t max_len = 8;       // max leaf count of an enumerated bracket
    std::size_t bracket_cap = 100000;
};

// Brute-force evaluation of the strong accessibility distribution at the
// origin: spans all left-normed brackets ad_{X_l}...ad_{X_1} f_j with
// l <= max_len-1, X_i among drift and controls. Stops early once the span
// is full or has been stationary across two consecutive lengths.
inline Subspace<Rational> c0_span_at_origin(const RSystem& sys, std::size_t max_len,
                                            std::size_t bracket_cap = 100000) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    auto gens = generator_fields(sys);

    Subspace<Rational> span(sys.n);
    detail::FieldSpan frontier;
    for (std::size_t i = 0; i < sys.num_controls(); ++i) {
        PolyVectorField f = PolyVectorField::constant(sys.control(i));
        span.insert(f.eval_at_origin());
        frontier.insert(std::move(f));
    }

    std::size_t brackets = 0;
    std::size_t plateau = 0;
    for (std::size_t len = 2; len <= max_len; ++len) {
        if (span.is_full()) break;
        detail::FieldSpan next;
        std::size_t before = span.rank();
        for (const auto& b : frontier.basis()) {
            for (const auto& x : gens) {
                if (++brackets > bracket_cap) throw BracketLimitExceeded(bracket_cap);
                PolyVectorField br = lie_bracket(x, b);
                if (br.is_zero()) continue;
                span.insert(br.eval_at_origin());
                next.insert(std::move(br));
            }
        }
        frontier = std::move(next);
        plateau = span.rank() == before ? plateau + 1 : 0;
        if (plateau >= 2 || frontier.rank() == 0) break;
    }
    return span;
}

inline Subspace<Rational> c0_span_at_origin(const RSystem& sys, const OracleOptions& opt) {
    return c0_span_at_origin(sys, opt.max_len, opt.bracket_cap);
}

enum class BracketKind {
    AdDrift,  // ad_{f0}^l f_i, value at 0 is (-1)^l L^l f_i
    Mixed2,   // [f_j, [f0, f_i]]
    Order3,   // [f_j, ad_{f0}^2 f_i] at 0
    Order4    // [f_l, [f_j, ad_{f0}^2 f_i]]
};

// Closed forms for the low-order constant brackets of the class; each is
// cross-checked against the generic engine in the tests.
inline RVec closed_form_bracket(const RSystem& sys, BracketKind kind, std::size_t i,
                                std::size_t j = 0, std::size_t l = 0) {
    const std::size_t m = sys.num_controls();
    auto check = [&](std::size_t idx) {
        if (idx >= m) throw std::out_of_range("control index out of range");
    };
    check(i);
    RVec fi = sys.control(i);
    switch (kind) {
        case BracketKind::AdDrift: {
            RVec v = fi;
            for (std::size_t s = 0; s < l; ++s) v = Rational(-1) * (sys.L * v);
            return v;
        }
        case BracketKind::Mixed2: {
            check(j);
            return Rational(-1) * psi(sys, fi, sys.control(j));
        }
        case BracketKind::Order3: {
            check(j);
            RVec fj = sys.control(j);
            RVec out = sys.L * psi(sys, fi, fj);
            out = out + psi(sys, fj, sys.L * fi);
            out = out - psi(sys, fi, sys.L * fj);
            return out;
        }
        case BracketKind::Order4: {
            check(j);
            check(l);
            RVec fj = sys.control(j), fl = sys.control(l);
            RVec out = psi(sys, psi(sys, fi, fj), fl);
            out = out + psi(sys, psi(sys, fi, fl), fj);
            out = out - psi(sys, fi, psi(sys, fj, fl));
            return out;
        }
    }
    throw std::invalid_argument("unknown bracket kind");
}

struct BracketNode {
    std::vector<std::size_t> word;  // X_1 ... X_l, 0 = drift
    std::size_t root;               // control index j of f_j
    RVec value_at_origin;
    bool in_final_chain_subspace = false;
};

// Explicit word-by-word enumeration, mainly for the JSON dump. Unlike
// c0_span_at_origin this keeps every word, so it is only meant for small
// depths.
inline std::vector<BracketNode> bracket_forest(const RSystem& sys, std::size_t max_len,
                                               std::size_t bracket_cap = 100000) {
    auto gens = generator_fields(sys);
    auto chain = s_chain(sys);
    std::vector<BracketNode> out;
    std::size_t count = 0;

    struct Item {
        std::vector<std::size_t> word;
        std::size_t root;
        PolyVectorField field;
    };
    std::vector<Item> level;
    for (std::size_t j = 0; j < sys.num_controls(); ++j) {
        PolyVectorField f = PolyVectorField::constant(sys.control(j));
        RVec v = f.eval_at_origin();
        out.push_back({{}, j, v, chain.final().contains(v)});
        level.push_back({{}, j, std::move(f)});
    }
    for (std::size_t len = 2; len <= max_len; ++len) {
        std::vector<Item> next;
        for (auto& item : level) {
            for (std::size_t g = 0; g < gens.size(); ++g) {
                if (++count > bracket_cap) throw BracketLimitExceeded(bracket_cap);
                PolyVectorField br = lie_bracket(gens[g], item.field);
                if (br.is_zero()) continue;
                std::vector<std::size_t> word = item.word;
                word.push_back(g);
                RVec v = br.eval_at_origin();
                out.push_back({word, item.root, v, chain.final().contains(v)});
                next.push_back({std::move(word), item.root, std::move(br)});
            }
        }
        level = std::move(next);
        if (level.empty()) break;
    }
    return out;
}

}  // namespace quadctrl
