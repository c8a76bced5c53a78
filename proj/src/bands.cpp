#include "diracband/bands.hpp"

#include "diracband/errors.hpp"
#include "diracband/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace diracband {

std::string_view to_string(Regime regime)
{
    return regime == Regime::evanescent ? "evanescent" : "propagating";
}

std::string_view to_string(BandKind kind)
{
    return kind == BandKind::allowed ? "allowed" : "forbidden";
}

Regime regime_of(double mass, double energy)
{
    return std::abs(energy) < mass ? Regime::evanescent : Regime::propagating;
}

std::vector<double> singular_energies(const ModelParams &p)
{
    return {-p.mass(), -p.lambda(), 0.0, p.lambda(), p.mass()};
}

namespace {

void guard_singular(const ModelParams &p, double energy, double eps)
{
    for (double s : singular_energies(p)) {
        if (std::abs(energy - s) < eps) {
            std::ostringstream os;
            os.precision(12);
            os << "closed-form D(E) is indeterminate at E=" << energy << " (removable point " << s
               << ")";
            throw DegenerateEnergy(os.str());
        }
    }
}

} // namespace

double lyapunov(const ModelParams &p, double energy, double eps)
{
    guard_singular(p, energy, eps);
    const Kinematics kin = make_kinematics(p.mass(), energy, eps);
    const complex k = kin.k;
    const double a = p.half_period();
    const auto [w1, w2] = w_functions(p, a);

    const complex c = std::cos(2.0 * k * a);
    const complex s = std::sin(2.0 * k * a);
    const complex cos_plus = c * kin.cos_delta - s * kin.sin_delta;  // cos(2ka + delta)
    const complex cos_minus = c * kin.cos_delta + s * kin.sin_delta; // cos(2ka - delta)
    const complex sin_plus = s * kin.cos_delta + c * kin.sin_delta;  // sin(2ka + delta)
    const complex sin_minus = s * kin.cos_delta - c * kin.sin_delta; // sin(2ka - delta)

    const complex k2 = k * k;
    const complex bracket = 2.0 * w1 * cos_plus - 2.0 * w2 * cos_minus +
                            (k2 - w1 * w1) * sin_plus / k - (k2 - w2 * w2) * sin_minus / k;
    const complex d = energy / (k2 + p.gamma() * p.gamma()) * bracket;

    if (!(std::abs(d.imag()) < imaginary_tolerance)) {
        std::ostringstream os;
        os << "D(E) has imaginary part " << d.imag() << " at E=" << energy;
        throw NonRealDiscriminant(os.str());
    }
    return d.real();
}

LyapunovValue lyapunov_regularized(const ModelParams &p, double energy)
{
    const auto singular = singular_energies(p);
    const auto nearest =
        std::min_element(singular.begin(), singular.end(), [&](double l, double r) {
            return std::abs(energy - l) < std::abs(energy - r);
        });
    const double s = *nearest;
    if (std::abs(energy - s) >= limit_radius)
        return {lyapunov(p, energy), false};

    // D is even: interpolate at |E| so that mirrored energies agree bitwise.
    const double e = std::abs(energy);
    const double c = std::abs(s);
    const double r = limit_radius;
    const double below = lyapunov(p, c - r);
    const double above = lyapunov(p, c + r);
    const double t = (e - (c - r)) / (2.0 * r);
    return {below + t * (above - below), true};
}

Discriminant closed_form_discriminant(const ModelParams &params)
{
    return [params](double e) { return lyapunov_regularized(params, e).value; };
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 2)
        throw std::invalid_argument("need at least two samples");
    // Weighted form: a range symmetric about zero gives exact mirror points.
    std::vector<double> out(static_cast<std::size_t>(n));
    const double span = n - 1;
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = ((n - 1 - i) * lo + i * hi) / span;
    out.front() = lo;
    out.back() = hi;
    return out;
}

LyapunovTrace lyapunov_trace(const ModelParams &params, double e_min, double e_max, int n)
{
    if (!(e_min < e_max))
        throw std::invalid_argument("lyapunov_trace: need e_min < e_max");
    const auto energies = linspace(e_min, e_max, n);
    LyapunovTrace trace{params, {}};
    trace.samples.reserve(energies.size());
    for (double e : energies) {
        const auto v = lyapunov_regularized(params, e);
        trace.samples.push_back({e, v.value, regime_of(params.mass(), e), v.limit_evaluated});
    }
    return trace;
}

LyapunovTrace lyapunov_trace(const Discriminant &discriminant, double mass, double e_min,
                             double e_max, int n)
{
    if (!(e_min < e_max))
        throw std::invalid_argument("lyapunov_trace: need e_min < e_max");
    const auto energies = linspace(e_min, e_max, n);
    const auto values = detail::parallel_map(energies, discriminant, 8);
    LyapunovTrace trace{std::nullopt, {}};
    trace.samples.reserve(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i)
        trace.samples.push_back({energies[i], values[i], regime_of(mass, energies[i]), false});
    return trace;
}

std::vector<double> BandTable::positive_edges() const
{
    std::vector<double> out;
    std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
                 [](double e) { return e > 0.0; });
    return out;
}

std::vector<Band> BandTable::positive_allowed_bands() const
{
    std::vector<Band> out;
    std::copy_if(bands.begin(), bands.end(), std::back_inserter(out),
                 [](const Band &b) { return b.kind == BandKind::allowed && b.lower >= 0.0; });
    return out;
}

namespace {

struct Sample {
    double energy;
    double value; // D
};

// g = D^2 - 4: smooth, vanishes exactly at the band edges, negative inside bands.
double excess(double d)
{
    return (d - 2.0) * (d + 2.0);
}

class EdgeSearch {
public:
    EdgeSearch(const Discriminant &d, double tol, const EdgeSearchOptions &opt)
        : d_(d), tol_(tol), opt_(opt)
    {
    }

    std::vector<double> positive_edges(double e_max)
    {
        const auto coarse = sample_grid(e_max);
        const auto fine = refine(coarse);
        return scan(fine);
    }

private:
    std::vector<Sample> evaluate(const std::vector<double> &energies) const
    {
        const auto values = detail::parallel_map(energies, d_);
        std::vector<Sample> out(energies.size());
        for (std::size_t i = 0; i < energies.size(); ++i)
            out[i] = {energies[i], values[i]};
        return out;
    }

    std::vector<Sample> sample_grid(double e_max) const
    {
        const int n = std::max(1, static_cast<int>(std::ceil(e_max / opt_.initial_step - 1e-9)));
        std::vector<double> energies(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i)
            energies[static_cast<std::size_t>(i)] = e_max * i / n;
        return evaluate(energies);
    }

    static bool local_extremum(const std::vector<Sample> &s, std::size_t j)
    {
        if (j == 0 || j + 1 >= s.size())
            return false;
        const double g0 = excess(s[j - 1].value);
        const double g1 = excess(s[j].value);
        const double g2 = excess(s[j + 1].value);
        return (g1 >= g0 && g1 > g2) || (g1 <= g0 && g1 < g2);
    }

    std::vector<Sample> refine(const std::vector<Sample> &coarse) const
    {
        const std::size_t cells = coarse.size() - 1;
        std::vector<bool> flag(cells, false);
        for (std::size_t i = 0; i < cells; ++i) {
            const double g0 = excess(coarse[i].value);
            const double g1 = excess(coarse[i + 1].value);
            if ((g0 < 0.0) != (g1 < 0.0) ||
                std::abs(coarse[i + 1].value - coarse[i].value) > opt_.slope_trigger)
                flag[i] = true;
        }
        for (std::size_t j = 1; j + 1 < coarse.size(); ++j) {
            if (local_extremum(coarse, j)) {
                flag[j - 1] = true;
                flag[j] = true;
            }
        }

        std::vector<double> extra;
        for (std::size_t i = 0; i < cells; ++i) {
            if (!flag[i])
                continue;
            const double lo = coarse[i].energy;
            const double hi = coarse[i + 1].energy;
            for (int r = 1; r < opt_.refinement; ++r)
                extra.push_back(lo + (hi - lo) * r / opt_.refinement);
        }
        auto added = evaluate(extra);
        std::vector<Sample> fine = coarse;
        fine.insert(fine.end(), added.begin(), added.end());
        std::sort(fine.begin(), fine.end(),
                  [](const Sample &l, const Sample &r) { return l.energy < r.energy; });
        return fine;
    }

    std::vector<double> scan(const std::vector<Sample> &s) const
    {
        std::vector<double> roots;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            const Sample &l = s[i];
            const Sample &r = s[i + 1];
            const double gl = excess(l.value);
            const double gr = excess(r.value);
            // A whole allowed band fitting inside one cell: D jumps from above
            // +2 to below -2 (or back) with no sampled point in between.
            if (gl > 0.0 && gr > 0.0 && (l.value > 0.0) != (r.value > 0.0)) {
                std::ostringstream os;
                os.precision(12);
                os << "D(E) swings from " << l.value << " to " << r.value
                   << " between E=" << l.energy << " and E=" << r.energy
                   << "; decrease the initial step or increase the refinement factor";
                throw GridTooCoarse(os.str());
            }
            if (gl == 0.0)
                roots.push_back(l.energy);
            else if ((gl < 0.0) != (gr < 0.0) && gr != 0.0)
                roots.push_back(bisect(l, r));
        }
        if (!s.empty() && excess(s.back().value) == 0.0)
            roots.push_back(s.back().energy);

        // Extrema of g that approach zero without a sampled sign change: a
        // narrow gap (or narrow band) hiding between three samples.
        for (std::size_t j = 1; j + 1 < s.size(); ++j) {
            const double g0 = excess(s[j - 1].value);
            const double g1 = excess(s[j].value);
            const double g2 = excess(s[j + 1].value);
            const bool same_sign = (g0 < 0.0) == (g1 < 0.0) && (g1 < 0.0) == (g2 < 0.0);
            if (!same_sign || g0 == 0.0 || g1 == 0.0 || g2 == 0.0)
                continue;
            const bool hidden_gap = g1 < 0.0 && g1 >= g0 && g1 > g2;
            const bool hidden_band = g1 > 0.0 && g1 <= g0 && g1 < g2;
            if (!hidden_gap && !hidden_band)
                continue;
            const Sample peak = extremum(s[j - 1].energy, s[j + 1].energy, hidden_gap);
            const double gp = excess(peak.value);
            if ((hidden_gap && gp > 0.0) || (hidden_band && gp < 0.0)) {
                roots.push_back(bisect(s[j - 1], peak));
                roots.push_back(bisect(peak, s[j + 1]));
            }
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    // Golden-section search for the maximum (or minimum) of g on [lo, hi].
    Sample extremum(double lo, double hi, bool maximize) const
    {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        auto score = [&](double e) {
            const double g = excess(d_(e));
            return maximize ? g : -g;
        };
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = score(x1);
        double f2 = score(x2);
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = score(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = score(x1);
            }
        }
        const double best = f1 > f2 ? x1 : x2;
        return {best, d_(best)};
    }

    double bisect(Sample lo, Sample hi) const
    {
        Sample best = std::abs(excess(lo.value)) < std::abs(excess(hi.value)) ? lo : hi;
        const double target = 4.0 * opt_.residual_target;
        for (int it = 0; it < 400; ++it) {
            const double mid = 0.5 * (lo.energy + hi.energy);
            if (!(mid > lo.energy && mid < hi.energy))
                break;
            const Sample m{mid, d_(mid)};
            const double gm = excess(m.value);
            if (std::abs(gm) < std::abs(excess(best.value)))
                best = m;
            if (gm == 0.0)
                break;
            if ((gm < 0.0) == (excess(lo.value) < 0.0))
                lo = m;
            else
                hi = m;
            if (hi.energy - lo.energy <= tol_ && std::abs(excess(best.value)) <= target)
                break;
        }
        return best.energy;
    }

    const Discriminant &d_;
    double tol_;
    EdgeSearchOptions opt_;
};

std::vector<Band> classify(const Discriminant &d, const std::vector<double> &edges)
{
    std::vector<Band> bands;
    if (edges.size() < 2)
        return bands;

    // Sampled kind per interval; ambiguous when |D(mid)| sits on 2.
    std::vector<int> sampled(edges.size() - 1, -1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double mid = 0.5 * (edges[i] + edges[i + 1]);
        const double dev = std::abs(d(mid)) - 2.0;
        if (std::abs(dev) > 1e-9)
            sampled[i] = dev < 0.0 ? 1 : 0;
    }
    const auto anchor = std::find_if(sampled.begin(), sampled.end(), [](int k) { return k >= 0; });
    if (anchor == sampled.end())
        throw GridTooCoarse("cannot classify bands: every interval is degenerate");
    const auto a = static_cast<std::size_t>(anchor - sampled.begin());

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const bool flip = ((i > a ? i - a : a - i) % 2) == 1;
        const int kind = flip ? 1 - sampled[a] : sampled[a];
        if (sampled[i] >= 0 && sampled[i] != kind) {
            std::ostringstream os;
            os.precision(12);
            os << "band kinds fail to alternate on [" << edges[i] << ", " << edges[i + 1]
               << "]; refine the edge search grid";
            throw GridTooCoarse(os.str());
        }
        bands.push_back(
            {edges[i], edges[i + 1], kind == 1 ? BandKind::allowed : BandKind::forbidden});
    }
    return bands;
}

} // namespace

BandTable find_band_edges(const Discriminant &discriminant, double e_max, double tol,
                          const EdgeSearchOptions &options)
{
    if (!(e_max > 0.0))
        throw std::invalid_argument("band_edges: e_max must be positive");
    if (!(tol > 0.0))
        throw std::invalid_argument("band_edges: tol must be positive");
    if (!(options.initial_step > 0.0) || options.refinement < 2)
        throw std::invalid_argument("band_edges: invalid grid options");

    EdgeSearch search(discriminant, tol, options);
    auto positive = search.positive_edges(e_max);
    positive.erase(
        std::remove_if(positive.begin(), positive.end(), [](double e) { return e <= 0.0; }),
        positive.end());

    BandTable table;
    table.e_max = e_max;
    table.tol = tol;
    table.edges.reserve(2 * positive.size());
    for (auto it = positive.rbegin(); it != positive.rend(); ++it)
        table.edges.push_back(-*it);
    table.edges.insert(table.edges.end(), positive.begin(), positive.end());
    table.bands = classify(discriminant, table.edges);
    return table;
}

BandTable band_edges(const ModelParams &params, double e_max, double tol,
                     const EdgeSearchOptions &options)
{
    BandTable table = find_band_edges(closed_form_discriminant(params), e_max, tol, options);
    table.params = params;
    return table;
}

std::vector<DispersionSample> dispersion(const Discriminant &discriminant, double half_period,
                                         const Band &band, int n)
{
    if (n < 2)
        throw std::invalid_argument("dispersion: need at least two samples");
    if (!(band.lower <= band.upper))
        throw std::invalid_argument("dispersion: band bounds out of order");

    const auto energies = linspace(band.lower, band.upper, n);
    const auto values = detail::parallel_map(energies, discriminant, 8);
    std::vector<DispersionSample> out;
    out.reserve(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        double half = values[i] / 2.0;
        if (std::abs(half) > 1.0 + dispersion_clamp / 2.0) {
            std::ostringstream os;
            os.precision(12);
            os << "|D| = " << std::abs(values[i]) << " > 2 at E=" << energies[i] << "; ["
               << band.lower << ", " << band.upper << "] is not an allowed band";
            throw NotAllowedBand(os.str());
        }
        const bool endpoint = i == 0 || i + 1 == energies.size();
        if (std::abs(half) > 1.0 || (endpoint && std::abs(half) > 1.0 - dispersion_clamp))
            half = std::copysign(1.0, half);
        out.push_back({energies[i], std::acos(half) / (2.0 * half_period)});
    }
    return out;
}

std::vector<DispersionSample> dispersion(const ModelParams &params, const Band &band, int n)
{
    return dispersion(closed_form_discriminant(params), params.half_period(), band, n);
}

} // namespace diracband
