#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "quadctrl/models.hpp"
#include "quadctrl/system.hpp"

using namespace quadctrl;
using quadctrl::testing::Rng;
using quadctrl::testing::random_system;

namespace {

// Independent oracle for Phi: component v is
//   a_v x_{v+1}^2 + b_v x_{v+2}^2 + c_v x_{v+1} x_{v+2}
// written directly from the index convention, no shared code with phi().
RVec phi_componentwise(const RSystem& sys, const RVec& x) {
    RVec out(sys.n);
    for (std::size_t v = 0; v < sys.n; ++v) {
        const Rational& x1 = x[(v + 1) % sys.n];
        const Rational& x2 = x[(v + 2) % sys.n];
        out[v] = sys.a[v] * x1 * x1 + sys.b[v] * x2 * x2 + sys.c[v] * x1 * x2;
    }
    return out;
}

}  // namespace

TEST_CASE("validate_system rejects malformed input") {
    RMat L3 = RMat::identity(3);
    RMat F = RMat::from_columns({RVec{1, 0, 0}});
    CHECK_THROWS_AS(validate_system<Rational>(1, 1, RMat::identity(1), RVec(1), RVec(1), RVec(1),
                                              RMat(1, 0)),
                    SystemError);
    CHECK_THROWS_AS(validate_system<Rational>(3, 0, L3, RVec(3), RVec(3), RVec(3), F),
                    SystemError);
    CHECK_THROWS_AS(validate_system<Rational>(3, 3, L3, RVec(3), RVec(3), RVec(3), F),
                    SystemError);
    CHECK_THROWS_AS(validate_system<Rational>(3, 2, RMat::identity(2), RVec(3), RVec(3), RVec(3),
                                              F),
                    SystemError);
    CHECK_THROWS_AS(validate_system<Rational>(3, 2, L3, RVec(2), RVec(3), RVec(3), F),
                    SystemError);
    RMat dep = RMat::from_columns({RVec{1, 0, 0}, RVec{2, 0, 0}});
    CHECK_THROWS_AS(validate_system<Rational>(3, 1, L3, RVec(3), RVec(3), RVec(3), dep),
                    SystemError);
}

TEST_CASE("cyclic shift convention") {
    RVec x{1, 2, 3, 4, 5};
    CHECK(cyclic_shift(x, 1) == RVec{2, 3, 4, 5, 1});
    CHECK(cyclic_shift(x, 2) == RVec{3, 4, 5, 1, 2});
}

TEST_CASE("drift of the three-dimensional cyclic model at mu=0") {
    auto sys = sprott<Rational>(Rational(0), {RVec{1, 0, 0}});
    CHECK(drift(sys, RVec{1, 2, 3}) == RVec{-3 + 4, -1 + 9, -2 + 1});
    CHECK(drift(sys, RVec{1, 2, 3}) == RVec{1, 8, -1});
}

TEST_CASE("drift of the convection model at classic parameters") {
    auto sys = lorenz<Rational>(Rational(10), Rational(28), Rational(8, 3), {RVec{1, 0, 0}});
    CHECK(drift(sys, RVec{1, 1, 1}) == RVec{0, 26, Rational(-5, 3)});
    // quadratic part alone: (0, -x1 x3, x1 x2)
    RVec x{2, 3, 5};
    CHECK(phi(sys, x) == RVec{0, -10, 6});
}

TEST_CASE("five-state example pins the index convention") {
    auto sys = quadctrl::testing::example_system("r5-nonaccessible");
    // component 4 of the drift must read x5 - x1^2
    RVec x{3, 0, 0, 0, 7};
    RVec d = drift(sys, x);
    CHECK(d[3] == Rational(7 - 9));
}

TEST_CASE("componentwise formula agrees with the shift formula") {
    Rng rng(201);
    for (int trial = 0; trial < 1000; ++trial) {
        RSystem sys = random_system(rng);
        RVec x = rng.vecq(sys.n);
        CHECK(phi(sys, x) == phi_componentwise(sys, x));
    }
}

TEST_CASE("Phi homogeneity of degree two") {
    Rng rng(202);
    for (int trial = 0; trial < 1000; ++trial) {
        RSystem sys = random_system(rng);
        RVec x = rng.vecq(sys.n);
        Rational lam = rng.ratq(-4, 4);
        CHECK(phi(sys, lam * x) == (lam * lam) * phi(sys, x));
    }
}

TEST_CASE("Psi bilinearity and symmetry") {
    Rng rng(203);
    for (int trial = 0; trial < 1000; ++trial) {
        RSystem sys = random_system(rng);
        RVec u = rng.vecq(sys.n), v = rng.vecq(sys.n), w = rng.vecq(sys.n);
        Rational alpha = rng.ratq(-4, 4);
        CHECK(psi(sys, u, v) == psi(sys, v, u));
        CHECK(psi(sys, alpha * u + w, v) == alpha * psi(sys, u, v) + psi(sys, w, v));
    }
}

TEST_CASE("polarization identity") {
    Rng rng(204);
    for (int trial = 0; trial < 1000; ++trial) {
        RSystem sys = random_system(rng);
        RVec u = rng.vecq(sys.n), v = rng.vecq(sys.n);
        CHECK(psi(sys, u, v) == phi(sys, u + v) - phi(sys, u) - phi(sys, v));
        CHECK(psi(sys, u, u) == Rational(2) * phi(sys, u));
    }
}

TEST_CASE("Jacobian identity DPhi(p) v = Psi(p, v)") {
    Rng rng(205);
    for (int trial = 0; trial < 1000; ++trial) {
        RSystem sys = random_system(rng);
        RVec p = rng.vecq(sys.n), v = rng.vecq(sys.n);
        CHECK(dphi(sys, p) * v == psi(sys, p, v));
    }
}

TEST_CASE("vector_field adds the control contribution") {
    auto sys = quadctrl::testing::example_system("r3-stlc");
    RVec x{1, 1, 1}, u{2, -3};
    RVec expect = drift(sys, x) + Rational(2) * sys.control(0) + Rational(-3) * sys.control(1);
    CHECK(vector_field(sys, x, u) == expect);
}

TEST_CASE("double conversion round trip") {
    Rng rng(206);
    for (int trial = 0; trial < 200; ++trial) {
        RSystem sys = random_system(rng);
        RSystem back = rationalize_system(to_double_system(sys));
        CHECK(back.L == sys.L);
        CHECK(back.a == sys.a);
        CHECK(back.b == sys.b);
        CHECK(back.c == sys.c);
        CHECK(back.F == sys.F);
    }
}
