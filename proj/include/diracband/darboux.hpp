#pragma once

// Darboux transformation for a scalar potential.
//
// Given an eigenspinor u1 = (u11, u21) of h0 = i sigma_y d/dx + (m + S0) sigma_x
// at energy lambda1 (its partner u2 = -sigma_z u1 sits at -lambda1), the
// intertwiner L = d/dx - u' u^{-1} = d/dx - diag((ln u11)', (ln u21)') maps
// solutions of h0 onto solutions of h1 with the scalar potential
//
//     S1 = S0 + (ln u21)' - (ln u11)' .

#include "diracband/spinor.hpp"

#include <functional>

namespace diracband {

class ModelParams;

/// A transformation-function component with (optional) analytic derivative.
/// When `derivative` is empty a central difference with `fallback_step` is used.
struct SeedComponent {
    std::function<double(double)> value;
    std::function<double(double)> derivative;

    static constexpr double fallback_step = 1e-6;

    double operator()(double x) const { return value(x); }
    double slope(double x) const;
};

struct TransformSeed {
    SeedComponent u11;
    SeedComponent u21;
    double lambda1 = 0.0;
    double mass = 0.0;
    ScalarPotential background;
    /// |u11|, |u21| below this are treated as nodes of the transform.
    double node_threshold = 1e-12;
};

/// Seed from the free-particle eigenspinors (cosh(gamma x - alpha), cosh(gamma x + alpha)).
TransformSeed soliton_seed(const ModelParams &params);

/// Free-particle seed at arbitrary steepness and centre; nodeless for 0 < gamma < m.
TransformSeed free_particle_seed(double mass, double gamma, double centre = 0.0);

/// Pair ((ln u11)', (ln u21)'). Throws SingularTransform at a node.
std::pair<double, double> log_derivatives(const TransformSeed &seed, double x);

/// S1(x) = S0(x) + (ln u21)'(x) - (ln u11)'(x).
double transformed_potential(const TransformSeed &seed, double x);

ScalarPotential transformed_potential_function(const TransformSeed &seed);

/// phi = L psi = (psi_1' - (ln u11)' psi_1, psi_2' - (ln u21)' psi_2).
/// Uses psi.derivative when present, otherwise a central difference.
Spinor map_solution(const TransformSeed &seed, const SpinorField &psi, double x);

/// L psi as a field at psi's energy (derivative left to finite differences).
SpinorField mapped_field(const TransformSeed &seed, SpinorField psi);

/// ||(L h0 - h1 L) psi(x)|| with outer derivatives taken by central
/// differences of step h. psi need not be a solution. The target Hamiltonian
/// h1 uses the seed's transformed potential.
double intertwining_check(const TransformSeed &seed, const SpinorField &psi, double x, double h);

/// As above but with an explicit target potential for h1.
double intertwining_check(const TransformSeed &seed, const SpinorField &psi, double x, double h,
                          const ScalarPotential &target);

} // namespace diracband
