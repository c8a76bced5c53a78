#pragma once

// Self-check suite behind `diracband verify`: every identity the model must
// satisfy, with the measured residual next to its threshold.

#include "diracband/soliton.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace diracband::verify {

/// Lowest positive band edges for m = 2, lambda = 1, a = 1, to
/// three decimals.
inline constexpr std::array<double, 8> reference_band_edges = {0.738, 1.381, 2.164, 3.274,
                                                               3.335, 4.802, 4.827, 6.352};
inline constexpr double reference_edge_tolerance = 2e-3;

struct Check {
    std::string name;
    std::string description;
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
    bool skipped = false;
};

struct Report {
    std::vector<Check> checks;

    [[nodiscard]] bool passed() const;
};

struct Options {
    int oracle_steps = 20000;
    std::uint64_t seed = 435;
};

/// True for the reference parameter set m = 2, lambda = 1, a = 1.
bool is_reference_parameter_set(const ModelParams &params);

Report run_suite(const ModelParams &params, const Options &options = {});

/// n energies spread over [lo, hi], each moved at least `clearance` away from
/// the singular energies of the closed forms.
std::vector<double> regular_energies(const ModelParams &params, double lo, double hi, int n,
                                     double clearance);

} // namespace diracband::verify
