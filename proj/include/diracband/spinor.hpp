#pragma once

// Spinor algebra for the one-dimensional Dirac equation
//
//     h psi = E psi,   h = i sigma_y d/dx + (m + S(x)) sigma_x
//
// written out componentwise as
//
//     psi_2' + (m + S) psi_2 = E psi_1
//    -psi_1' + (m + S) psi_1 = E psi_2 .

#include <complex>
#include <functional>
#include <limits>
#include <string>

namespace diracband {

using complex = std::complex<double>;

struct Spinor {
    complex c1{};
    complex c2{};

    Spinor &operator+=(const Spinor &o)
    {
        c1 += o.c1;
        c2 += o.c2;
        return *this;
    }
    Spinor &operator-=(const Spinor &o)
    {
        c1 -= o.c1;
        c2 -= o.c2;
        return *this;
    }
    Spinor &operator*=(complex s)
    {
        c1 *= s;
        c2 *= s;
        return *this;
    }

    friend Spinor operator+(Spinor a, const Spinor &b) { return a += b; }
    friend Spinor operator-(Spinor a, const Spinor &b) { return a -= b; }
    friend Spinor operator*(complex s, Spinor a) { return a *= s; }
    friend Spinor operator*(Spinor a, complex s) { return a *= s; }
    friend bool operator==(const Spinor &, const Spinor &) = default;

    [[nodiscard]] double norm() const { return std::sqrt(std::norm(c1) + std::norm(c2)); }
    [[nodiscard]] bool finite() const;
};

/// Real scalar potential S(x); enters the Hamiltonian as (m + S(x)) sigma_x.
struct ScalarPotential {
    std::function<double(double)> s;
    std::string description;

    double operator()(double x) const { return s(x); }
};

/// x -> Spinor at fixed energy. `derivative` is optional; when empty,
/// consumers fall back to finite differences. Evaluation is only valid on
/// [lower, upper].
struct SpinorField {
    std::function<Spinor(double)> value;
    std::function<Spinor(double)> derivative;
    double energy = 0.0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    Spinor operator()(double x) const { return value(x); }
    [[nodiscard]] bool has_derivative() const { return static_cast<bool>(derivative); }
    [[nodiscard]] bool contains(double x) const { return x >= lower && x <= upper; }
};

/// Roots of beta^2 - D beta + 1 = 0, beta1 = D/2 + sqrt(D^2/4 - 1).
struct FloquetPair {
    complex beta1;
    complex beta2;
};

/// i sigma_y applied to a spinor: (c2, -c1).
Spinor apply_i_sigma_y(const Spinor &s);
/// sigma_x applied to a spinor: (c2, c1).
Spinor apply_sigma_x(const Spinor &s);

/// Spinor Wronskian W(phi, psi) = phi_1 psi_2 - phi_2 psi_1.
///
/// For real spinors this is phi^+ (i sigma_y) psi. The bilinear form (no
/// complex conjugation) is used so that the identity W = const continues
/// analytically to complex-valued solutions; it is also the determinant of
/// the fundamental matrix [phi psi], which is what enters the Floquet
/// discriminant.
complex wronskian(const Spinor &phi, const Spinor &psi);

/// Euclidean norm of (i sigma_y D_h + (m + S(x)) sigma_x - E) field(x), where
/// D_h is the second-order central difference with step h.
///
/// Throws DomainError if x +- h leaves the field's domain and
/// std::invalid_argument if h <= 0.
double hamiltonian_residual(const SpinorField &field, const ScalarPotential &potential, double mass,
                            double energy, double x, double h = 1e-4);

FloquetPair floquet_multipliers(double discriminant);

} // namespace diracband
