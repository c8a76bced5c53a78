#include "diracband/darboux.hpp"

#include "diracband/errors.hpp"
#include "diracband/soliton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace diracband {

double SeedComponent::slope(double x) const
{
    if (derivative)
        return derivative(x);
    const double h = fallback_step;
    return (value(x + h) - value(x - h)) / (2.0 * h);
}

TransformSeed soliton_seed(const ModelParams &params)
{
    const double g = params.gamma();
    const double alpha = params.alpha();
    TransformSeed seed;
    seed.u11 = {[g, alpha](double x) { return std::cosh(g * x - alpha); },
                [g, alpha](double x) { return g * std::sinh(g * x - alpha); }};
    seed.u21 = {[g, alpha](double x) { return std::cosh(g * x + alpha); },
                [g, alpha](double x) { return g * std::sinh(g * x + alpha); }};
    seed.lambda1 = params.lambda();
    seed.mass = params.mass();
    seed.background = {[](double) { return 0.0; }, "free particle"};
    return seed;
}

TransformSeed free_particle_seed(double mass, double gamma, double centre)
{
    if (!(gamma > 0.0) || !(gamma < mass))
        throw InvalidParameters("free_particle_seed: need 0 < gamma < mass");
    const double alpha = 0.25 * std::log((mass - gamma) / (mass + gamma));
    TransformSeed seed;
    seed.u11 = {[=](double x) { return std::cosh(gamma * (x - centre) - alpha); },
                [=](double x) { return gamma * std::sinh(gamma * (x - centre) - alpha); }};
    seed.u21 = {[=](double x) { return std::cosh(gamma * (x - centre) + alpha); },
                [=](double x) { return gamma * std::sinh(gamma * (x - centre) + alpha); }};
    seed.lambda1 = std::sqrt((mass - gamma) * (mass + gamma));
    seed.mass = mass;
    seed.background = {[](double) { return 0.0; }, "free particle"};
    return seed;
}

std::pair<double, double> log_derivatives(const TransformSeed &seed, double x)
{
    const double u11 = seed.u11(x);
    const double u21 = seed.u21(x);
    if (!(std::abs(u11) >= seed.node_threshold) || !(std::abs(u21) >= seed.node_threshold))
        throw SingularTransform("transformation function has a node near x=" + std::to_string(x));
    return {seed.u11.slope(x) / u11, seed.u21.slope(x) / u21};
}

double transformed_potential(const TransformSeed &seed, double x)
{
    const auto [l11, l21] = log_derivatives(seed, x);
    return seed.background(x) + l21 - l11;
}

ScalarPotential transformed_potential_function(const TransformSeed &seed)
{
    return {[seed](double x) { return transformed_potential(seed, x); },
            "Darboux transform of " + seed.background.description};
}

namespace {

Spinor field_slope(const SpinorField &psi, double x)
{
    if (psi.has_derivative())
        return psi.derivative(x);
    const double h = SeedComponent::fallback_step;
    return complex(1.0 / (2.0 * h)) * (psi(x + h) - psi(x - h));
}

Spinor apply_intertwiner(const TransformSeed &seed, const Spinor &value, const Spinor &slope,
                         double x)
{
    const auto [l11, l21] = log_derivatives(seed, x);
    return {slope.c1 - l11 * value.c1, slope.c2 - l21 * value.c2};
}

// h applied to a spinor given its value and slope.
Spinor apply_hamiltonian(double coupling, const Spinor &value, const Spinor &slope)
{
    return apply_i_sigma_y(slope) + complex(coupling) * apply_sigma_x(value);
}

} // namespace

Spinor map_solution(const TransformSeed &seed, const SpinorField &psi, double x)
{
    return apply_intertwiner(seed, psi(x), field_slope(psi, x), x);
}

SpinorField mapped_field(const TransformSeed &seed, SpinorField psi)
{
    SpinorField out;
    out.energy = psi.energy;
    out.lower = psi.lower;
    out.upper = psi.upper;
    out.value = [seed, psi = std::move(psi)](double x) { return map_solution(seed, psi, x); };
    return out;
}

double intertwining_check(const TransformSeed &seed, const SpinorField &psi, double x, double h)
{
    return intertwining_check(seed, psi, x, h, transformed_potential_function(seed));
}

double intertwining_check(const TransformSeed &seed, const SpinorField &psi, double x, double h,
                          const ScalarPotential &target)
{
    if (!(h > 0.0))
        throw std::invalid_argument("intertwining_check: step must be positive");
    if (!psi.contains(x - h) || !psi.contains(x + h))
        throw DomainError("intertwining_check: stencil at x=" + std::to_string(x) +
                          " leaves the evaluation domain");

    const double m = seed.mass;
    auto h0_psi = [&](double y) {
        return apply_hamiltonian(m + seed.background(y), psi(y), field_slope(psi, y));
    };
    auto l_psi = [&](double y) { return map_solution(seed, psi, y); };
    const double inv2h = 1.0 / (2.0 * h);

    // L h0 psi = (h0 psi)' - u'u^{-1} (h0 psi)
    const Spinor h0_centre = h0_psi(x);
    const Spinor h0_slope = complex(inv2h) * (h0_psi(x + h) - h0_psi(x - h));
    const Spinor lhs = apply_intertwiner(seed, h0_centre, h0_slope, x);

    // h1 L psi
    const Spinor l_centre = l_psi(x);
    const Spinor l_slope = complex(inv2h) * (l_psi(x + h) - l_psi(x - h));
    const Spinor rhs = apply_hamiltonian(m + target(x), l_centre, l_slope);

    return (lhs - rhs).norm();
}

} // namespace diracband
