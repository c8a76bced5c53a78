#pragma once

// Closed-form one-soliton (reflectionless) scalar potential
//
//     S1(x) = -2 gamma^2 / (m + lambda cosh(2 gamma x)),  lambda = sqrt(m^2 - gamma^2)
//
// together with its basis solutions at arbitrary energy and its two bound
// states at E = +-lambda.

#include "diracband/spinor.hpp"

#include <utility>

namespace diracband {

class ModelParams {
public:
    static ModelParams from_lambda(double mass, double lambda, double half_period);
    static ModelParams from_gamma(double mass, double gamma, double half_period);

    double mass() const { return mass_; }
    double gamma() const { return gamma_; }
    double lambda() const { return lambda_; }
    /// alpha = ln((m - gamma)/(m + gamma)) / 4, i.e. e^{2 alpha} = sqrt((m - gamma)/(m + gamma)).
    double alpha() const { return alpha_; }
    double half_period() const { return half_period_; }
    double period() const { return 2.0 * half_period_; }

    /// Copy with alpha overridden. Breaks the alpha(gamma, m) relation; exists
    /// only so that the verification suite can demonstrate it detects a
    /// corrupted model.
    ModelParams with_alpha(double alpha) const;

    friend bool operator==(const ModelParams &, const ModelParams &) = default;

private:
    ModelParams(double mass, double gamma, double lambda, double half_period);

    double mass_;
    double gamma_;
    double lambda_;
    double alpha_;
    double half_period_;
};

/// Energy-dependent quantities. k = sqrt(E^2 - m^2) with Im k >= 0 and the
/// phase delta fixed by e^{i delta} = (m + i k) / E, so that tan(delta) = k/m
/// and cos(delta) = m/E on both signs of E.
struct Kinematics {
    double energy;
    complex k;
    complex delta;
    complex cos_delta;
    complex sin_delta;
};

/// Throws DegenerateEnergy for |E| < eps (delta undefined at E = 0).
Kinematics make_kinematics(double mass, double energy, double eps = 1e-9);

inline constexpr double default_energy_epsilon = 1e-9;

double potential_s1(const ModelParams &params, double x);

/// S1 restricted to [-a, a) and continued with period 2a.
double periodized_s1(const ModelParams &params, double x);

ScalarPotential soliton_potential(const ModelParams &params);
ScalarPotential periodized_soliton_potential(const ModelParams &params);

/// (w1, w2) = (gamma tanh(gamma x - alpha), gamma tanh(gamma x + alpha)).
std::pair<double, double> w_functions(const ModelParams &params, double x);

/// Basis solutions (psi~, phi~) of the Dirac equation with potential m + S1,
/// normalized to W(psi~, phi~) = 1.
///
/// The closed forms are singular at E = 0, E = +-lambda and E = +-m; within
/// `eps` of any of them DegenerateEnergy is thrown.
std::pair<Spinor, Spinor> basis_spinors(const ModelParams &params, const Kinematics &kin, double x,
                                        double eps = default_energy_epsilon);

/// The same basis packaged as fields (value and analytic derivative).
std::pair<SpinorField, SpinorField> basis_fields(const ModelParams &params, double energy);

/// Columns of (u^t)^{-1} for the transformation function built from
/// u1 = (cosh(gamma x - alpha), cosh(gamma x + alpha)) and u2 = -sigma_z u1.
/// Column 1 is the bound state at E = +lambda, column 2 at E = -lambda.
std::pair<Spinor, Spinor> bound_states(const ModelParams &params, double x);

std::pair<SpinorField, SpinorField> bound_state_fields(const ModelParams &params);

/// det u(x) = 2 cosh(gamma x - alpha) cosh(gamma x + alpha).
double transform_determinant(const ModelParams &params, double x);

} // namespace diracband
