#include "diracband/errors.hpp"
#include "diracband/soliton.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace diracband;

namespace {

const ModelParams reference = ModelParams::from_lambda(2.0, 1.0, 1.0);

} // namespace

TEST_CASE("parameter derivation and validation")
{
    CHECK(reference.gamma() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(reference.alpha() ==
          doctest::Approx(0.25 * std::log((2.0 - std::sqrt(3.0)) / (2.0 + std::sqrt(3.0)))));
    CHECK(std::exp(2.0 * reference.alpha()) ==
          doctest::Approx(std::sqrt((2.0 - std::sqrt(3.0)) / (2.0 + std::sqrt(3.0)))));
    CHECK(reference.period() == 2.0);

    for (double g : {1e-4, 0.3, 1.0, 1.9, 1.999999}) {
        const auto p = ModelParams::from_gamma(2.0, g, 0.7);
        CHECK(std::abs(p.mass() * p.mass() - p.gamma() * p.gamma() - p.lambda() * p.lambda()) <
              1e-12);
        const auto q = ModelParams::from_lambda(2.0, p.lambda(), 0.7);
        CHECK(q.gamma() == doctest::Approx(g).epsilon(1e-9));
    }

    CHECK_THROWS_AS(ModelParams::from_lambda(2.0, 2.0, 1.0), InvalidParameters);
    CHECK_THROWS_AS(ModelParams::from_lambda(2.0, 0.0, 1.0), InvalidParameters);
    CHECK_THROWS_AS(ModelParams::from_gamma(2.0, 2.5, 1.0), InvalidParameters);
    CHECK_THROWS_AS(ModelParams::from_gamma(2.0, -0.1, 1.0), InvalidParameters);
    CHECK_THROWS_AS(ModelParams::from_gamma(2.0, 1.0, 0.0), InvalidParameters);
    CHECK_THROWS_AS(ModelParams::from_gamma(-2.0, 1.0, 1.0), InvalidParameters);
    CHECK_THROWS_AS(ModelParams::from_gamma(2.0, NAN, 1.0), InvalidParameters);
    CHECK_THROWS_AS(ModelParams::from_gamma(2.0, 1.0, INFINITY), InvalidParameters);
}

TEST_CASE("kinematics")
{
    for (double e : {-7.0, -2.5, -1.5, -0.3, 0.3, 1.5, 2.5, 7.0}) {
        const Kinematics kin = make_kinematics(2.0, e);
        CAPTURE(e);
        CHECK(std::abs(kin.k * kin.k - (e * e - 4.0)) < 1e-12 * std::max(1.0, e * e));
        CHECK(kin.k.imag() >= 0.0);
        if (std::abs(e) > 2.0) {
            CHECK(kin.k.imag() == 0.0);
            CHECK(std::abs(kin.delta.imag()) < 1e-14);
        } else {
            CHECK(kin.k.real() == 0.0);
        }
        // tan(delta) = k/m on the chosen branch; cos and sin consistent with delta.
        CHECK(std::abs(kin.sin_delta / kin.cos_delta - kin.k / 2.0) < 1e-12);
        CHECK(std::abs(std::cos(kin.delta) - kin.cos_delta) < 1e-12);
        CHECK(std::abs(std::sin(kin.delta) - kin.sin_delta) < 1e-12);
        CHECK(std::abs(kin.cos_delta - 2.0 / e) < 1e-12);
    }
    CHECK_THROWS_AS(make_kinematics(2.0, 0.0), DegenerateEnergy);
    CHECK_THROWS_AS(make_kinematics(2.0, 1e-10), DegenerateEnergy);
}

TEST_CASE("one-soliton potential")
{
    CHECK(potential_s1(reference, 0.0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(std::abs(potential_s1(reference, 5.0)) < 1e-6);
    // Independent evaluation of -2 gamma^2 / (m + lambda cosh(2 gamma x)).
    const double g = std::sqrt(3.0);
    for (double x : {-2.3, -0.4, 0.1, 0.77, 3.0})
        CHECK(potential_s1(reference, x) ==
              doctest::Approx(-2.0 * g * g / (2.0 + std::cosh(2.0 * g * x))).epsilon(1e-13));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(-6.0, 6.0);
    double min_value = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double x = pos(rng);
        CHECK(potential_s1(reference, x) == potential_s1(reference, -x));
        min_value = std::min(min_value, potential_s1(reference, x));
    }
    // Reflectionless depth: m + S1 >= m - 2 gamma^2/(m + lambda) = 0 here.
    CHECK(2.0 + min_value >= -1e-15);

    const auto gamma1 = ModelParams::from_gamma(2.0, 1.0, 1.0);
    CHECK(potential_s1(gamma1, 0.0) == doctest::Approx(-2.0 / (2.0 + std::sqrt(3.0))));
}

TEST_CASE("periodized potential")
{
    const auto p = ModelParams::from_lambda(2.0, 1.0, 1.0);
    CHECK(periodized_s1(p, 1.0) == periodized_s1(p, -1.0));
    for (double x : {-0.9, -0.2, 0.35, 0.99}) {
        for (int n : {-3, -1, 1, 4})
            CHECK(periodized_s1(p, x + 2.0 * n) ==
                  doctest::Approx(potential_s1(p, x)).epsilon(1e-13));
    }
    for (int n : {-3, -2, -1, 0, 1, 2, 3})
        CHECK(periodized_s1(p, 2.0 * n) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("w functions")
{
    const auto [w1_far, w2_far] = w_functions(reference, 30.0);
    CHECK(w1_far == doctest::Approx(reference.gamma()));
    CHECK(w2_far == doctest::Approx(reference.gamma()));
    const auto [w1_neg, w2_neg] = w_functions(reference, -30.0);
    CHECK(w1_neg == doctest::Approx(-reference.gamma()));
    CHECK(w2_neg == doctest::Approx(-reference.gamma()));

    // w1(x; alpha) = w2(x; -alpha).
    const auto flipped = reference.with_alpha(-reference.alpha());
    for (double x : {-1.3, 0.0, 0.4, 2.2})
        CHECK(w_functions(reference, x).first ==
              doctest::Approx(w_functions(flipped, x).second).epsilon(1e-14));

    // Resolved boundary relation: w1(-a) = -w2(a), not +w2(a).
    const auto [w1_ma, w2_ma] = w_functions(reference, -1.0);
    const auto [w1_a, w2_a] = w_functions(reference, 1.0);
    CHECK(w1_ma == doctest::Approx(-1.3697112045986477).epsilon(1e-14));
    CHECK(w2_a == doctest::Approx(1.3697112045986477).epsilon(1e-14));
    CHECK(w1_ma == doctest::Approx(-w2_a).epsilon(1e-15));
    CHECK(w2_ma == doctest::Approx(-w1_a).epsilon(1e-15));
    CHECK(std::abs(w1_ma - w2_a) > 1.0);
}

TEST_CASE("basis spinors")
{
    SUBCASE("unit wronskian on a grid spanning both regimes")
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double e = -5.0 + 10.0 * i / 19.0;
            if (std::abs(std::abs(e) - 2.0) < 0.05 || std::abs(std::abs(e) - 1.0) < 0.05)
                e += 0.1;
            const Kinematics kin = make_kinematics(2.0, e);
            for (int j = 0; j < 20; ++j) {
                const auto [psi, phi] = basis_spinors(reference, kin, -3.0 + 6.0 * j / 19.0);
                worst = std::max(worst, std::abs(wronskian(psi, phi) - 1.0));
            }
        }
        CHECK(worst < 1e-10);
    }
    SUBCASE("evanescent energy")
    {
        const auto [psi, phi] = basis_spinors(reference, make_kinematics(2.0, 1.5), 0.4);
        CHECK(std::abs(wronskian(psi, phi) - 1.0) < 1e-10);
    }
    SUBCASE("residuals in both regimes and both signs of E")
    {
        const auto s1 = soliton_potential(reference);
        for (double e : {3.0, 1.5, 0.4, -0.4, -1.5, -3.0, 6.0}) {
            const auto [psi, phi] = basis_fields(reference, e);
            for (double x : {-0.8, 0.2, 1.1}) {
                CAPTURE(e);
                CAPTURE(x);
                CHECK(hamiltonian_residual(psi, s1, 2.0, e, x, 1e-4) < 1e-6);
                CHECK(hamiltonian_residual(phi, s1, 2.0, e, x, 1e-4) < 1e-6);
            }
        }
    }
    SUBCASE("analytic derivatives agree with finite differences")
    {
        const auto [psi, phi] = basis_fields(reference, 2.7);
        for (double x : {-0.5, 0.3}) {
            const double h = 1e-5;
            const Spinor fd = complex(1.0 / (2.0 * h)) * (psi.value(x + h) - psi.value(x - h));
            CHECK((psi.derivative(x) - fd).norm() < 1e-7);
        }
    }
    SUBCASE("degenerate energies are rejected")
    {
        CHECK_THROWS_AS(basis_spinors(reference, make_kinematics(2.0, 2.0), 0.1), DegenerateEnergy);
        CHECK_THROWS_AS(basis_spinors(reference, make_kinematics(2.0, -2.0), 0.1),
                        DegenerateEnergy);
        CHECK_THROWS_AS(basis_spinors(reference, make_kinematics(2.0, 1.0), 0.1), DegenerateEnergy);
        CHECK_THROWS_AS(basis_fields(reference, 2.0 + 1e-10), DegenerateEnergy);
    }
}

TEST_CASE("bound states")
{
    const auto s1 = soliton_potential(reference);
    const auto [v1, v2] = bound_state_fields(reference);
    CHECK(v1.energy == doctest::Approx(1.0));
    CHECK(v2.energy == doctest::Approx(-1.0));
    CHECK(hamiltonian_residual(v1, s1, 2.0, 1.0, 0.5, 1e-4) < 1e-6);
    CHECK(hamiltonian_residual(v2, s1, 2.0, -1.0, 0.5, 1e-4) < 1e-6);
    CHECK(hamiltonian_residual(v1, s1, 2.0, 1.2, 0.5, 1e-4) > 1e-3);

    const auto [c1, c2] = bound_states(reference, 0.0);
    CHECK(c1.finite());
    CHECK(c2.finite());
    CHECK(c1.norm() > 0.0);
    CHECK(c2.norm() > 0.0);

    // Asymptotic decay e^{-gamma x}.
    for (double x : {8.0, 10.0}) {
        const auto [a1, a2] = bound_states(reference, x);
        const auto [b1, b2] = bound_states(reference, x + 1.0);
        CHECK(a1.norm() / b1.norm() == doctest::Approx(std::exp(reference.gamma())).epsilon(0.05));
        CHECK(a2.norm() / b2.norm() == doctest::Approx(std::exp(reference.gamma())).epsilon(0.05));
    }

    // Nonsingular transform over a wide grid for several steepnesses.
    for (double g : {0.01, 0.5, 1.0, std::sqrt(3.0), 1.99}) {
        const auto p = ModelParams::from_gamma(2.0, g, 1.0);
        for (int i = 0; i <= 400; ++i)
            CHECK(transform_determinant(p, -20.0 + 0.1 * i) > 0.0);
    }
}
