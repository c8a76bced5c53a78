#pragma once

// Lyapunov function D(E) of the periodized soliton potential, band edges
// |D(E)| = 2, and the dispersion law cos(2Ka) = D(E)/2.

#include "diracband/soliton.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace diracband {

enum class Regime { propagating, evanescent };
enum class BandKind { allowed, forbidden };

std::string_view to_string(Regime regime);
std::string_view to_string(BandKind kind);

/// |E| < m is evanescent (k imaginary), otherwise propagating.
Regime regime_of(double mass, double energy);

/// Any real function E -> D(E); lets the edge finder run on the closed form
/// or on the numerical monodromy trace alike.
using Discriminant = std::function<double(double)>;

inline constexpr double imaginary_tolerance = 1e-9;
/// Half-width of the neighbourhood in which D is taken as a limit rather than
/// from the closed form.
inline constexpr double limit_radius = 1e-5;

/// Closed-form D(E), evaluated in complex arithmetic on the fixed k branch.
///
/// D has removable singularities at E = 0, +-lambda and +-m. Within `eps` of
/// any of them DegenerateEnergy is thrown; use lyapunov_regularized there.
/// Throws NonRealDiscriminant if |Im D| >= 1e-9.
double lyapunov(const ModelParams &params, double energy, double eps = default_energy_epsilon);

/// The five removable singular energies {-m, -lambda, 0, lambda, m}.
std::vector<double> singular_energies(const ModelParams &params);

struct LyapunovValue {
    double value;
    bool limit_evaluated;
};

/// D(E) everywhere on the real line. Inside limit_radius of a singular energy
/// s the value is the linear interpolant between D(s - r) and D(s + r), which
/// equals the symmetric limit at s itself.
LyapunovValue lyapunov_regularized(const ModelParams &params, double energy);

Discriminant closed_form_discriminant(const ModelParams &params);

struct LyapunovSample {
    double energy;
    double value;
    Regime regime;
    bool limit_evaluated;
};

struct LyapunovTrace {
    std::optional<ModelParams> params;
    std::vector<LyapunovSample> samples;
};

/// n >= 2 equally spaced energies on [e_min, e_max].
LyapunovTrace lyapunov_trace(const ModelParams &params, double e_min, double e_max, int n);
/// Same for an arbitrary discriminant (no limit flags).
LyapunovTrace lyapunov_trace(const Discriminant &discriminant, double mass, double e_min,
                             double e_max, int n);

/// n >= 2 points from lo to hi inclusive; symmetric ranges give exact mirrors.
std::vector<double> linspace(double lo, double hi, int n);

struct Band {
    double lower;
    double upper;
    BandKind kind;
};

struct EdgeSearchOptions {
    double initial_step = 0.01;
    int refinement = 10;
    /// Cells whose D changes by more than this are refined (large |D'|).
    double slope_trigger = 0.25;
    /// Bisection continues past `tol` until ||D| - 2| is below this.
    double residual_target = 1e-12;
};

struct BandTable {
    std::optional<ModelParams> params;
    double e_max = 0.0;
    double tol = 0.0;
    /// Ascending; symmetric under E -> -E.
    std::vector<double> edges;
    /// Intervals between consecutive edges, alternating in kind.
    std::vector<Band> bands;

    std::vector<double> positive_edges() const;
    /// Allowed bands with lower >= 0, ascending.
    std::vector<Band> positive_allowed_bands() const;
};

/// Edges with |E| <= e_max of a discriminant that is even in E.
///
/// Positive edges are bracketed on a grid (step options.initial_step, refined
/// where |D| crosses 2, where |D| has a local extremum, and where D changes
/// fast), polished by bisection and mirrored to negative energies.
/// Throws GridTooCoarse when a refined cell cannot be resolved.
BandTable find_band_edges(const Discriminant &discriminant, double e_max, double tol,
                          const EdgeSearchOptions &options = {});

BandTable band_edges(const ModelParams &params, double e_max, double tol,
                     const EdgeSearchOptions &options = {});

struct DispersionSample {
    double energy;
    double wavevector;
};

inline constexpr double dispersion_clamp = 1e-9;

/// n >= 2 samples (E, K) across `band` with K = arccos(D/2) / (2a) in [0, pi/(2a)].
/// Throws NotAllowedBand if |D| > 2 + 1e-9 anywhere on the sample grid.
std::vector<DispersionSample> dispersion(const Discriminant &discriminant, double half_period,
                                         const Band &band, int n);
std::vector<DispersionSample> dispersion(const ModelParams &params, const Band &band, int n);

} // namespace diracband
