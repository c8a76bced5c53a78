#include "diracband/soliton.hpp"

#include "diracband/errors.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

namespace diracband {

namespace {

constexpr complex I{0.0, 1.0};

std::string describe(const ModelParams &p)
{
    std::ostringstream os;
    os.precision(12);
    os << "m=" << p.mass() << " gamma=" << p.gamma() << " lambda=" << p.lambda()
       << " a=" << p.half_period();
    return os.str();
}

} // namespace

ModelParams::ModelParams(double mass, double gamma, double lambda, double half_period)
    : mass_(mass), gamma_(gamma), lambda_(lambda),
      alpha_(0.25 * std::log((mass - gamma) / (mass + gamma))), half_period_(half_period)
{
}

ModelParams ModelParams::from_lambda(double mass, double lambda, double half_period)
{
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw InvalidParameters("mass must be positive and finite");
    if (!(lambda > 0.0) || !(lambda < mass))
        throw InvalidParameters("lambda must satisfy 0 < lambda < mass");
    if (!(half_period > 0.0) || !std::isfinite(half_period))
        throw InvalidParameters("half period must be positive and finite");
    const double gamma = std::sqrt((mass - lambda) * (mass + lambda));
    return {mass, gamma, lambda, half_period};
}

ModelParams ModelParams::from_gamma(double mass, double gamma, double half_period)
{
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw InvalidParameters("mass must be positive and finite");
    if (!(gamma > 0.0) || !(gamma < mass))
        throw InvalidParameters("gamma must satisfy 0 < gamma < mass");
    if (!(half_period > 0.0) || !std::isfinite(half_period))
        throw InvalidParameters("half period must be positive and finite");
    const double lambda = std::sqrt((mass - gamma) * (mass + gamma));
    return {mass, gamma, lambda, half_period};
}

ModelParams ModelParams::with_alpha(double alpha) const
{
    ModelParams copy = *this;
    copy.alpha_ = alpha;
    return copy;
}

Kinematics make_kinematics(double mass, double energy, double eps)
{
    if (std::abs(energy) < eps)
        throw DegenerateEnergy("kinematics undefined at E = 0");
    const double k2 = (energy - mass) * (energy + mass);
    const complex k = k2 >= 0.0 ? complex(std::sqrt(k2), 0.0) : complex(0.0, std::sqrt(-k2));
    const complex cos_delta = mass / energy;
    const complex sin_delta = k / energy;
    const complex delta = -I * std::log(cos_delta + I * sin_delta);
    return {energy, k, delta, cos_delta, sin_delta};
}

double potential_s1(const ModelParams &p, double x)
{
    const double g = p.gamma();
    return -2.0 * g * g / (p.mass() + p.lambda() * std::cosh(2.0 * g * x));
}

double periodized_s1(const ModelParams &p, double x)
{
    const double a = p.half_period();
    const double t = 2.0 * a;
    const double folded = x - t * std::floor((x + a) / t);
    return potential_s1(p, folded);
}

ScalarPotential soliton_potential(const ModelParams &params)
{
    return {[params](double x) { return potential_s1(params, x); },
            "one-soliton S1 (" + describe(params) + ")"};
}

ScalarPotential periodized_soliton_potential(const ModelParams &params)
{
    return {[params](double x) { return periodized_s1(params, x); },
            "periodized one-soliton S1 (" + describe(params) + ")"};
}

std::pair<double, double> w_functions(const ModelParams &p, double x)
{
    const double g = p.gamma();
    return {g * std::tanh(g * x - p.alpha()), g * std::tanh(g * x + p.alpha())};
}

namespace {

void guard_energy(const ModelParams &p, double energy, double eps)
{
    const double m = p.mass();
    const double l = p.lambda();
    if (std::abs(energy) < eps)
        throw DegenerateEnergy("basis spinors are singular at E = 0");
    if (std::abs((energy - m) * (energy + m)) < eps)
        throw DegenerateEnergy("basis spinors are singular at |E| = m (k = 0)");
    if (std::abs((energy - l) * (energy + l)) < eps)
        throw DegenerateEnergy("basis spinors are singular at |E| = lambda");
}

struct BasisTerms {
    complex c, s;   // cos kx, sin kx
    complex c2, s2; // cos(kx - delta), sin(kx - delta)
    double w1, w2;
    complex norm; // sqrt(gamma^2 + k^2)
};

BasisTerms basis_terms(const ModelParams &p, const Kinematics &kin, double x)
{
    BasisTerms t;
    const complex kx = kin.k * x;
    t.c = std::cos(kx);
    t.s = std::sin(kx);
    t.c2 = t.c * kin.cos_delta + t.s * kin.sin_delta;
    t.s2 = t.s * kin.cos_delta - t.c * kin.sin_delta;
    std::tie(t.w1, t.w2) = w_functions(p, x);
    t.norm = std::sqrt(kin.k * kin.k + p.gamma() * p.gamma());
    return t;
}

} // namespace

std::pair<Spinor, Spinor> basis_spinors(const ModelParams &p, const Kinematics &kin, double x,
                                        double eps)
{
    guard_energy(p, kin.energy, eps);
    const BasisTerms t = basis_terms(p, kin, x);
    const complex k = kin.k;

    const complex pref_psi = kin.energy / t.norm;
    const Spinor psi{pref_psi * (t.c - t.w1 * t.s / k), pref_psi * (t.c2 - t.w2 * t.s2 / k)};

    const complex pref_phi = -1.0 / t.norm;
    const Spinor phi{pref_phi * (k * t.s + t.w1 * t.c), pref_phi * (k * t.s2 + t.w2 * t.c2)};
    return {psi, phi};
}

std::pair<SpinorField, SpinorField> basis_fields(const ModelParams &params, double energy)
{
    guard_energy(params, energy, default_energy_epsilon);
    const Kinematics kin = make_kinematics(params.mass(), energy);
    const double g2 = params.gamma() * params.gamma();

    SpinorField psi;
    psi.energy = energy;
    psi.value = [params, kin](double x) { return basis_spinors(params, kin, x).first; };
    psi.derivative = [params, kin, g2](double x) {
        const BasisTerms t = basis_terms(params, kin, x);
        const complex k = kin.k;
        const double dw1 = g2 - t.w1 * t.w1;
        const double dw2 = g2 - t.w2 * t.w2;
        const complex pref = kin.energy / t.norm;
        return Spinor{pref * (-k * t.s - dw1 * t.s / k - t.w1 * t.c),
                      pref * (-k * t.s2 - dw2 * t.s2 / k - t.w2 * t.c2)};
    };

    SpinorField phi;
    phi.energy = energy;
    phi.value = [params, kin](double x) { return basis_spinors(params, kin, x).second; };
    phi.derivative = [params, kin, g2](double x) {
        const BasisTerms t = basis_terms(params, kin, x);
        const complex k = kin.k;
        const double dw1 = g2 - t.w1 * t.w1;
        const double dw2 = g2 - t.w2 * t.w2;
        const complex pref = -1.0 / t.norm;
        return Spinor{pref * (k * k * t.c + dw1 * t.c - t.w1 * k * t.s),
                      pref * (k * k * t.c2 + dw2 * t.c2 - t.w2 * k * t.s2)};
    };
    return {psi, phi};
}

double transform_determinant(const ModelParams &p, double x)
{
    const double g = p.gamma();
    return 2.0 * std::cosh(g * x - p.alpha()) * std::cosh(g * x + p.alpha());
}

std::pair<Spinor, Spinor> bound_states(const ModelParams &p, double x)
{
    const double g = p.gamma();
    // u = [u1 u2] with u1 = (u11, u21), u2 = -sigma_z u1 = (-u11, u21).
    const double u11 = std::cosh(g * x - p.alpha());
    const double u21 = std::cosh(g * x + p.alpha());
    const double u12 = -u11;
    const double u22 = u21;
    const double det = u11 * u22 - u12 * u21;
    if (!(std::abs(det) > 1e-12) || !std::isfinite(det))
        throw SingularTransform("det u vanishes at x=" + std::to_string(x));
    // (u^t)^{-1} = adj(u^t) / det; its columns are (u22, -u12)/det and (-u21, u11)/det.
    const Spinor v1{u22 / det, -u12 / det};
    const Spinor v2{-u21 / det, u11 / det};
    return {v1, v2};
}

std::pair<SpinorField, SpinorField> bound_state_fields(const ModelParams &params)
{
    const double g = params.gamma();
    auto slopes = [params, g](double x) {
        const double u11 = std::cosh(g * x - params.alpha());
        const double u21 = std::cosh(g * x + params.alpha());
        const double d11 = -g * std::sinh(g * x - params.alpha()) / (2.0 * u11 * u11);
        const double d21 = -g * std::sinh(g * x + params.alpha()) / (2.0 * u21 * u21);
        return std::pair{d11, d21};
    };

    SpinorField v1;
    v1.energy = params.lambda();
    v1.value = [params](double x) { return bound_states(params, x).first; };
    v1.derivative = [slopes](double x) {
        const auto [d11, d21] = slopes(x);
        return Spinor{d11, d21};
    };

    SpinorField v2;
    v2.energy = -params.lambda();
    v2.value = [params](double x) { return bound_states(params, x).second; };
    v2.derivative = [slopes](double x) {
        const auto [d11, d21] = slopes(x);
        return Spinor{-d11, d21};
    };
    return {v1, v2};
}

} // namespace diracband
