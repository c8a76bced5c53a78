#include "diracband/spinor.hpp"

#include "diracband/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace diracband {

bool Spinor::finite() const
{
    return std::isfinite(c1.real()) && std::isfinite(c1.imag()) && std::isfinite(c2.real()) &&
           std::isfinite(c2.imag());
}

Spinor apply_i_sigma_y(const Spinor &s)
{
    return {s.c2, -s.c1};
}

Spinor apply_sigma_x(const Spinor &s)
{
    return {s.c2, s.c1};
}

complex wronskian(const Spinor &phi, const Spinor &psi)
{
    return phi.c1 * psi.c2 - phi.c2 * psi.c1;
}

double hamiltonian_residual(const SpinorField &field, const ScalarPotential &potential, double mass,
                            double energy, double x, double h)
{
    if (!(h > 0.0))
        throw std::invalid_argument("hamiltonian_residual: step must be positive");
    if (!field.contains(x - h) || !field.contains(x + h))
        throw DomainError("hamiltonian_residual: stencil at x=" + std::to_string(x) +
                          " leaves the evaluation domain");

    const Spinor centre = field(x);
    const Spinor slope = complex(1.0 / (2.0 * h)) * (field(x + h) - field(x - h));
    const double coupling = mass + potential(x);

    const Spinor r = apply_i_sigma_y(slope) + complex(coupling) * apply_sigma_x(centre) -
                     complex(energy) * centre;
    return r.norm();
}

FloquetPair floquet_multipliers(double discriminant)
{
    const double half = discriminant / 2.0;
    if (std::abs(half) <= 1.0) {
        const double s = std::sqrt(1.0 - half * half);
        return {complex(half, s), complex(half, -s)};
    }
    // Real pair; take the larger-magnitude root without cancellation and the
    // other from the unit product.
    const double big = half + std::copysign(std::sqrt(half * half - 1.0), half);
    return {complex(big), complex(1.0 / big)};
}

} // namespace diracband
