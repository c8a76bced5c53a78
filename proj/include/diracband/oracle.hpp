#pragma once

// Direct numerical integration of the Dirac system over one period. For real E
// the equation is the real, trace-free linear system
//
//     psi_1' =  (m + S) psi_1 - E psi_2
//     psi_2' =  E psi_1 - (m + S) psi_2
//
// whose fundamental matrix has unit determinant; its trace after one period is
// the Lyapunov function D(E).

#include "diracband/spinor.hpp"

#include <array>
#include <istream>
#include <string>
#include <vector>

namespace diracband {

struct Matrix2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;

    [[nodiscard]] double trace() const { return a11 + a22; }
    [[nodiscard]] double det() const { return a11 * a22 - a12 * a21; }
};

struct Monodromy {
    Matrix2 matrix;
    double energy = 0.0;
    double x0 = 0.0;
    double period = 0.0;
    std::string potential;

    [[nodiscard]] double trace() const { return matrix.trace(); }
    [[nodiscard]] double det() const { return matrix.det(); }
};

inline constexpr int default_rk4_steps = 20000;
inline constexpr int minimum_rk4_steps = 100;
inline constexpr double determinant_tolerance = 1e-6;

/// Propagate the unit fundamental matrix from x0 to x0 + period with
/// classical RK4 at fixed step period/steps.
///
/// Throws StepCountTooSmall if steps < 100 or if |det - 1| exceeds 1e-6.
Monodromy integrate_monodromy(const ScalarPotential &potential, double mass, double energy,
                              double x0, double period, int steps = default_rk4_steps);

/// trace of the monodromy from -a to a. The potential is used as given; wrap
/// it with `periodize` when it is only defined on one cell.
double lyapunov_numeric(const ScalarPotential &potential, double mass, double energy,
                        double half_period, int steps = default_rk4_steps);

/// Fold x into [-a, a) before evaluating `cell`.
ScalarPotential periodize(ScalarPotential cell, double half_period);

/// Piecewise-linear interpolant through (x_i, s_i); x must be strictly
/// increasing with at least two samples. Outside the table the end values are
/// held constant.
ScalarPotential tabulated_potential(std::vector<double> xs, std::vector<double> values,
                                    std::string description = "tabulated potential");

/// Two-column CSV (x, S). An optional non-numeric header line and blank lines
/// are skipped. Throws InvalidInput on malformed rows.
ScalarPotential read_tabulated_potential(std::istream &in, std::string description);

} // namespace diracband
