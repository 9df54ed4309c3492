#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "quadctrl/lie.hpp"

using namespace quadctrl;
using quadctrl::testing::Rng;
using quadctrl::testing::random_system;

namespace {

PolyVectorField random_field(Rng& rng, std::size_t n) {
    PolyVectorField f(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial p(n);
        p += Polynomial::constant(n, rng.rat(-2, 2));
        for (std::size_t j = 0; j < n; ++j) {
            p += Polynomial::variable(n, j, rng.rat(-2, 2));
            for (std::size_t l = j; l < n; ++l)
                p += rng.rat(-1, 1) *
                     (Polynomial::variable(n, j) * Polynomial::variable(n, l));
        }
        f[i] = std::move(p);
    }
    return f;
}

PolyVectorField sum(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField out = a;
    out += b;
    return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    auto x = Polynomial::variable(2, 0);
    auto y = Polynomial::variable(2, 1);
    auto p = x * x + Rational(3) * (x * y);
    CHECK(p.eval(RVec{2, 5}) == Rational(4 + 30));
    CHECK(p.degree() == 2);
    CHECK(p.derivative(0) == Rational(2) * x + Rational(3) * y);
    CHECK(p.derivative(1) == Rational(3) * x);
    CHECK((p - p).is_zero());
    CHECK(p.eval_at_origin() == Rational(0));
    CHECK(Polynomial::constant(2, Rational(7)).eval_at_origin() == Rational(7));
}

TEST_CASE("lie_bracket on a known pair") {
    // f = (y, 0), g = (0, x): [f,g] = Dg f - Df g = (-x, y)
    PolyVectorField f(2), g(2);
    f[0] = Polynomial::variable(2, 1);
    g[1] = Polynomial::variable(2, 0);
    PolyVectorField br = lie_bracket(f, g);
    CHECK(br[0] == Polynomial::variable(2, 0, Rational(-1)));
    CHECK(br[1] == Polynomial::variable(2, 1));
}

TEST_CASE("bracket is antisymmetric and bilinear") {
    Rng rng(401);
    for (int trial = 0; trial < 300; ++trial) {
        auto n = static_cast<std::size_t>(rng.irange(2, 3));
        auto f = random_field(rng, n), g = random_field(rng, n), h = random_field(rng, n);
        CHECK(sum(lie_bracket(f, g), lie_bracket(g, f)).is_zero());
        Rational alpha = rng.rat(-3, 3);
        auto lhs = lie_bracket(sum(alpha * f, h), g);
        auto rhs = sum(alpha * lie_bracket(f, g), lie_bracket(h, g));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Jacobi identity") {
    Rng rng(402);
    for (int trial = 0; trial < 1000; ++trial) {
        auto n = static_cast<std::size_t>(rng.irange(2, 3));
        auto f = random_field(rng, n), g = random_field(rng, n), h = random_field(rng, n);
        auto j = sum(sum(lie_bracket(f, lie_bracket(g, h)), lie_bracket(g, lie_bracket(h, f))),
                     lie_bracket(h, lie_bracket(f, g)));
        CHECK(j.is_zero());
    }
}

TEST_CASE("drift_field matches the direct drift evaluation") {
    Rng rng(403);
    for (int trial = 0; trial < 300; ++trial) {
        RSystem sys = random_system(rng);
        auto f0 = drift_field(sys);
        RVec x = rng.vecq(sys.n);
        CHECK(f0.eval(x) == drift(sys, x));
        CHECK(is_zero_vec(f0.eval_at_origin()));
    }
}

TEST_CASE("closed-form brackets match the generic engine") {
    Rng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        RSystem sys = random_system(rng);
        auto gens = generator_fields(sys);
        const auto& f0 = gens[0];
        std::size_t m = sys.num_controls();
        auto ctrl = [&](std::size_t i) { return gens[1 + i]; };

        auto i = static_cast<std::size_t>(rng.irange(0, static_cast<long>(m) - 1));
        auto j = static_cast<std::size_t>(rng.irange(0, static_cast<long>(m) - 1));
        auto l3 = static_cast<std::size_t>(rng.irange(0, static_cast<long>(m) - 1));

        // ad_{f0}^l f_i at 0 equals (-1)^l L^l f_i
        PolyVectorField ad = ctrl(i);
        for (std::size_t l = 0; l <= 3; ++l) {
            CHECK(ad.eval_at_origin() ==
                  closed_form_bracket(sys, BracketKind::AdDrift, i, 0, l));
            ad = lie_bracket(f0, ad);
        }
        // [f_j, [f0, f_i]](0) = -Psi(f_i, f_j)
        auto mixed2 = lie_bracket(ctrl(j), lie_bracket(f0, ctrl(i)));
        CHECK(mixed2.eval_at_origin() == closed_form_bracket(sys, BracketKind::Mixed2, i, j));
        // [f_j, ad_{f0}^2 f_i](0)
        auto order3 = lie_bracket(ctrl(j), lie_bracket(f0, lie_bracket(f0, ctrl(i))));
        CHECK(order3.eval_at_origin() == closed_form_bracket(sys, BracketKind::Order3, i, j));
        // [f_l, [f_j, ad_{f0}^2 f_i]](0)
        auto order4 = lie_bracket(ctrl(l3), order3);
        CHECK(order4.eval_at_origin() ==
              closed_form_bracket(sys, BracketKind::Order4, i, j, l3));
    }
}

TEST_CASE("bracket span equals the subspace chain") {
    Rng rng(405);
    for (int trial = 0; trial < 60; ++trial) {
        RSystem sys = random_system(rng);
        auto span = c0_span_at_origin(sys, 8);
        CHECK(span.same_span(s_chain(sys).final()));
    }
}

TEST_CASE("every enumerated bracket value lies in the final chain subspace") {
    Rng rng(406);
    for (int trial = 0; trial < 40; ++trial) {
        RSystem sys = random_system(rng, 2, 4);
        for (const auto& node : bracket_forest(sys, 4))
            CHECK(node.in_final_chain_subspace);
    }
}

TEST_CASE("bracket forest words are well formed") {
    auto sys = quadctrl::testing::example_system("hypergraph");
    auto forest = bracket_forest(sys, 3);
    CHECK(!forest.empty());
    for (const auto& node : forest) {
        CHECK(node.root < sys.num_controls());
        CHECK(node.word.size() <= 2);
        CHECK(node.value_at_origin.size() == sys.n);
    }
}

TEST_CASE("bracket cap throws instead of hanging") {
    Rng rng(407);
    RSystem sys = random_system(rng, 5, 5);
    CHECK_THROWS_AS(c0_span_at_origin(sys, 8, 3), BracketLimitExceeded);
}

TEST_CASE("oracle on the five-state example") {
    auto sys = quadctrl::testing::example_system("r5-nonaccessible");
    auto span = c0_span_at_origin(sys, 8);
    CHECK(span.rank() == 2);
    CHECK(span.same_span(s_chain(sys).final()));
}
