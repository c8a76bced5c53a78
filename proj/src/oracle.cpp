#include "diracband/oracle.hpp"

#include "diracband/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

namespace diracband {

namespace {

// Y' = A(x) Y with A = [[M, -E], [E, -M]], M = m + S(x).
Matrix2 rhs(double coupling, double energy, const Matrix2 &y)
{
    return {coupling * y.a11 - energy * y.a21, coupling * y.a12 - energy * y.a22,
            energy * y.a11 - coupling * y.a21, energy * y.a12 - coupling * y.a22};
}

Matrix2 axpy(const Matrix2 &y, double h, const Matrix2 &k)
{
    return {y.a11 + h * k.a11, y.a12 + h * k.a12, y.a21 + h * k.a21, y.a22 + h * k.a22};
}

} // namespace

Monodromy integrate_monodromy(const ScalarPotential &potential, double mass, double energy,
                              double x0, double period, int steps)
{
    if (steps < minimum_rk4_steps)
        throw StepCountTooSmall("RK4 needs at least " + std::to_string(minimum_rk4_steps) +
                                " steps per period, got " + std::to_string(steps));

    const double h = period / steps;
    Matrix2 y;
    for (int i = 0; i < steps; ++i) {
        const double x = x0 + i * h;
        const double m0 = mass + potential(x);
        const double mh = mass + potential(x + 0.5 * h);
        const double m1 = mass + potential(x0 + (i + 1) * h);

        const Matrix2 k1 = rhs(m0, energy, y);
        const Matrix2 k2 = rhs(mh, energy, axpy(y, 0.5 * h, k1));
        const Matrix2 k3 = rhs(mh, energy, axpy(y, 0.5 * h, k2));
        const Matrix2 k4 = rhs(m1, energy, axpy(y, h, k3));

        const double w = h / 6.0;
        y.a11 += w * (k1.a11 + 2.0 * (k2.a11 + k3.a11) + k4.a11);
        y.a12 += w * (k1.a12 + 2.0 * (k2.a12 + k3.a12) + k4.a12);
        y.a21 += w * (k1.a21 + 2.0 * (k2.a21 + k3.a21) + k4.a21);
        y.a22 += w * (k1.a22 + 2.0 * (k2.a22 + k3.a22) + k4.a22);
    }

    Monodromy out{y, energy, x0, period, potential.description};
    const double drift = std::abs(out.det() - 1.0);
    if (!(drift <= determinant_tolerance)) {
        std::ostringstream os;
        os << "monodromy determinant drifted by " << drift << " at E=" << energy << " with "
           << steps << " steps; increase the step count";
        throw StepCountTooSmall(os.str());
    }
    return out;
}

double lyapunov_numeric(const ScalarPotential &potential, double mass, double energy,
                        double half_period, int steps)
{
    return integrate_monodromy(potential, mass, energy, -half_period, 2.0 * half_period, steps)
        .trace();
}

ScalarPotential periodize(ScalarPotential cell, double half_period)
{
    const double a = half_period;
    const double t = 2.0 * a;
    std::string description = "periodized " + cell.description;
    return {
        [cell = std::move(cell), a, t](double x) { return cell(x - t * std::floor((x + a) / t)); },
        std::move(description)};
}

ScalarPotential tabulated_potential(std::vector<double> xs, std::vector<double> values,
                                    std::string description)
{
    if (xs.size() != values.size())
        throw InvalidInput("tabulated potential: column lengths differ");
    if (xs.size() < 2)
        throw InvalidInput("tabulated potential: need at least two samples");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(values[i]))
            throw InvalidInput("tabulated potential: non-finite sample at row " +
                               std::to_string(i));
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw InvalidInput("tabulated potential: x must be strictly increasing (row " +
                               std::to_string(i) + ")");
    }
    return {[xs = std::move(xs), values = std::move(values)](double x) {
                if (x <= xs.front())
                    return values.front();
                if (x >= xs.back())
                    return values.back();
                const auto it = std::upper_bound(xs.begin(), xs.end(), x);
                const auto j = static_cast<std::size_t>(it - xs.begin());
                const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
                return values[j - 1] + t * (values[j] - values[j - 1]);
            },
            std::move(description)};
}

namespace {

bool parse_double(std::string_view text, double &out)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

} // namespace

ScalarPotential read_tabulated_potential(std::istream &in, std::string description)
{
    std::vector<double> xs;
    std::vector<double> values;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto comma = line.find(',');
        double x = 0.0;
        double s = 0.0;
        const bool ok = comma != std::string::npos &&
                        parse_double(std::string_view(line).substr(0, comma), x) &&
                        parse_double(std::string_view(line).substr(comma + 1), s);
        if (!ok) {
            if (xs.empty() && row == 1)
                continue; // header
            throw InvalidInput("tabulated potential: malformed row " + std::to_string(row) + ": '" +
                               line + "'");
        }
        xs.push_back(x);
        values.push_back(s);
    }
    return tabulated_potential(std::move(xs), std::move(values), std::move(description));
}

} // namespace diracband
