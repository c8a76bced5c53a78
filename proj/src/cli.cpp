#include "diracband/cli.hpp"

#include "diracband/bands.hpp"
#include "diracband/errors.hpp"
#include "diracband/oracle.hpp"
#include "diracband/parallel.hpp"
#include "diracband/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace diracband::cli {

using nlohmann::json;

std::string format_number(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

// Value as it appears in the CSV, so JSON and CSV agree digit for digit.
double rounded(double value)
{
    const std::string text = format_number(value);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

void require(bool ok, const std::string &field, const std::string &message)
{
    if (!ok)
        throw InvalidConfig("invalid " + field + ": " + message);
}

void validate(const RunConfig &c)
{
    require(std::isfinite(c.mass) && c.mass > 0.0, "--mass", "must be positive");
    require(!(c.lambda && c.gamma), "--lambda/--gamma", "give exactly one of the two");
    require(std::isfinite(c.half_period) && c.half_period > 0.0, "--half-period",
            "must be positive");
    require(std::isfinite(c.e_min) && std::isfinite(c.e_max) && c.e_min < c.e_max, "--emin/--emax",
            "need emin < emax");
    require(c.samples >= 2, "--samples", "need at least 2");
    require(std::isfinite(c.tol) && c.tol > 0.0, "--tol", "must be positive");
    require(std::isfinite(c.alpha_scale), "--alpha-scale", "must be finite");
}

json params_json(const ModelParams &p)
{
    return json{{"mass", rounded(p.mass())},
                {"lambda", rounded(p.lambda())},
                {"gamma", rounded(p.gamma())},
                {"alpha", rounded(p.alpha())},
                {"half_period", rounded(p.half_period())},
                {"period", rounded(p.period())}};
}

// The discriminant and the potential a command works on: the closed-form model
// or, with --potential-file, the tabulated profile through the RK4 oracle.
struct Model {
    ModelParams params;
    std::optional<ScalarPotential> tabulated;

    [[nodiscard]] bool closed_form() const { return !tabulated.has_value(); }

    [[nodiscard]] ScalarPotential potential() const
    {
        return tabulated ? periodize(*tabulated, params.half_period())
                         : periodized_soliton_potential(params);
    }

    [[nodiscard]] Discriminant discriminant() const
    {
        if (closed_form())
            return closed_form_discriminant(params);
        const ScalarPotential v = potential();
        const double m = params.mass();
        const double a = params.half_period();
        return [v, m, a](double e) { return lyapunov_numeric(v, m, e, a); };
    }

    [[nodiscard]] json params_echo(const RunConfig &c) const
    {
        if (closed_form())
            return params_json(params);
        return json{{"mass", rounded(params.mass())},
                    {"half_period", rounded(params.half_period())},
                    {"period", rounded(params.period())},
                    {"potential_file", c.potential_file}};
    }
};

Model load_model(const RunConfig &c)
{
    Model model{resolve_params(c), std::nullopt};
    if (!c.potential_file.empty()) {
        std::ifstream in(c.potential_file);
        if (!in)
            throw InvalidConfig("invalid --potential-file: cannot open '" + c.potential_file + "'");
        model.tabulated = read_tabulated_potential(in, "tabulated potential " + c.potential_file);
    }
    return model;
}

json envelope(const json &params, json data, const std::string &command, json meta_extra = {})
{
    json meta{{"version", artifact_version}, {"command", command}};
    if (meta_extra.is_object())
        meta.update(meta_extra);
    return json{{"params", params}, {"data", std::move(data)}, {"meta", std::move(meta)}};
}

void write_json(std::ostream &out, const json &doc)
{
    out << doc.dump(2) << '\n';
}

double search_range(const RunConfig &c)
{
    return std::max(std::abs(c.e_min), std::abs(c.e_max));
}

json band_json(const Band &b)
{
    return json{
        {"e_lo", rounded(b.lower)}, {"e_hi", rounded(b.upper)}, {"kind", to_string(b.kind)}};
}

} // namespace

ModelParams resolve_params(const RunConfig &c)
{
    validate(c);
    ModelParams p = [&] {
        try {
            if (c.gamma)
                return ModelParams::from_gamma(c.mass, *c.gamma, c.half_period);
            return ModelParams::from_lambda(c.mass, c.lambda.value_or(1.0), c.half_period);
        } catch (const InvalidParameters &e) {
            throw InvalidConfig(std::string(c.gamma ? "invalid --gamma: " : "invalid --lambda: ") +
                                e.what());
        }
    }();
    if (c.alpha_scale != 1.0)
        p = p.with_alpha(p.alpha() * c.alpha_scale);
    return p;
}

int cmd_potential(const RunConfig &c, std::ostream &out)
{
    const Model model = load_model(c);
    const ScalarPotential v = model.potential();
    const double a = model.params.half_period();
    // Three full periods centred on the origin.
    const auto xs = linspace(-3.0 * a, 3.0 * a, c.samples);

    if (c.format == Format::csv) {
        out << "x,s1\n";
        for (double x : xs)
            out << format_number(x) << ',' << format_number(v(x)) << '\n';
        return exit_code::success;
    }
    json rows = json::array();
    for (double x : xs)
        rows.push_back({{"x", rounded(x)}, {"s1", rounded(v(x))}});
    write_json(out, envelope(model.params_echo(c), std::move(rows), "potential",
                             {{"x_min", rounded(xs.front())}, {"x_max", rounded(xs.back())}}));
    return exit_code::success;
}

int cmd_lyapunov(const RunConfig &c, std::ostream &out)
{
    const Model model = load_model(c);
    const LyapunovTrace trace = model.closed_form()
                                    ? lyapunov_trace(model.params, c.e_min, c.e_max, c.samples)
                                    : lyapunov_trace(model.discriminant(), model.params.mass(),
                                                     c.e_min, c.e_max, c.samples);

    if (c.format == Format::csv) {
        out << "e,d,regime\n";
        for (const auto &s : trace.samples)
            out << format_number(s.energy) << ',' << format_number(s.value) << ','
                << to_string(s.regime) << '\n';
        return exit_code::success;
    }
    json rows = json::array();
    for (const auto &s : trace.samples)
        rows.push_back({{"e", rounded(s.energy)},
                        {"d", rounded(s.value)},
                        {"regime", to_string(s.regime)},
                        {"limit_evaluated", s.limit_evaluated}});
    json meta{{"e_min", rounded(c.e_min)}, {"e_max", rounded(c.e_max)}};
    if (model.closed_form()) {
        json singular = json::array();
        for (double s : singular_energies(model.params))
            singular.push_back(rounded(s));
        meta["singular_energies"] = std::move(singular);
        meta["limit_radius"] = limit_radius;
    } else {
        meta["oracle_steps"] = default_rk4_steps;
    }
    write_json(out, envelope(model.params_echo(c), std::move(rows), "lyapunov", std::move(meta)));
    return exit_code::success;
}

int cmd_bands(const RunConfig &c, std::ostream &out)
{
    const Model model = load_model(c);
    if (c.verify && !model.closed_form())
        throw InvalidConfig("invalid --verify: the oracle cross-check needs the closed-form model "
                            "(drop --potential-file)");

    const Discriminant d = model.discriminant();
    const BandTable table = find_band_edges(d, search_range(c), c.tol);

    std::vector<double> edges;
    for (double e : table.edges)
        if (e >= c.e_min && e <= c.e_max)
            edges.push_back(e);
    std::vector<Band> bands;
    for (const Band &b : table.bands)
        if (b.lower >= c.e_min && b.upper <= c.e_max)
            bands.push_back(b);

    json verification = json::array();
    bool verified = true;
    if (c.verify) {
        const ScalarPotential v = model.potential();
        const auto oracle = detail::parallel_map(
            edges,
            [&](double e) {
                return lyapunov_numeric(v, model.params.mass(), e, model.params.half_period());
            },
            8);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const double closed = d(edges[i]);
            const double residual = std::abs(closed - oracle[i]);
            verified = verified && residual < 1e-6;
            verification.push_back({{"edge", rounded(edges[i])},
                                    {"d_closed", rounded(closed)},
                                    {"d_oracle", rounded(oracle[i])},
                                    {"residual", rounded(residual)}});
        }
    }

    if (c.format == Format::csv) {
        out << "e_lo,e_hi,kind\n";
        for (const Band &b : bands)
            out << format_number(b.lower) << ',' << format_number(b.upper) << ','
                << to_string(b.kind) << '\n';
    } else {
        json edge_list = json::array();
        for (double e : edges)
            edge_list.push_back(rounded(e));
        json band_list = json::array();
        for (const Band &b : bands)
            band_list.push_back(band_json(b));
        json data{{"edges", std::move(edge_list)}, {"bands", std::move(band_list)}};
        json meta{{"e_min", rounded(c.e_min)}, {"e_max", rounded(c.e_max)}, {"tol", c.tol}};
        if (c.verify) {
            data["verification"] = std::move(verification);
            meta["verification_passed"] = verified;
            meta["verification_threshold"] = 1e-6;
        }
        write_json(out, envelope(model.params_echo(c), std::move(data), "bands", std::move(meta)));
    }
    return verified ? exit_code::success : exit_code::verification_failure;
}

int cmd_dispersion(const RunConfig &c, std::ostream &out)
{
    const Model model = load_model(c);
    const Discriminant d = model.discriminant();
    const BandTable table = find_band_edges(d, search_range(c), c.tol);

    // Non-negative indices count allowed bands reaching above zero upwards from
    // the lowest; negative indices count those reaching below zero downwards.
    std::vector<Band> upper;
    std::vector<Band> lower;
    for (const Band &b : table.bands) {
        if (b.kind != BandKind::allowed)
            continue;
        if (b.upper > 0.0)
            upper.push_back(b);
        if (b.lower < 0.0)
            lower.insert(lower.begin(), b);
    }
    const std::vector<Band> &pool = c.band_index >= 0 ? upper : lower;
    const std::size_t slot = c.band_index >= 0
                                 ? static_cast<std::size_t>(c.band_index)
                                 : static_cast<std::size_t>(-static_cast<long>(c.band_index) - 1);
    if (slot >= pool.size())
        throw IndexOutOfRange("invalid --band-index " + std::to_string(c.band_index) + ": " +
                              std::to_string(upper.size()) + " allowed band(s) above and " +
                              std::to_string(lower.size()) +
                              " below zero within |E| <= " + format_number(search_range(c)));
    const Band band = pool[slot];
    const auto samples = dispersion(d, model.params.half_period(), band, c.samples);

    if (c.format == Format::csv) {
        out << "k,e\n";
        for (const auto &s : samples)
            out << format_number(s.wavevector) << ',' << format_number(s.energy) << '\n';
        return exit_code::success;
    }
    json rows = json::array();
    for (const auto &s : samples)
        rows.push_back({{"k", rounded(s.wavevector)}, {"e", rounded(s.energy)}});
    json meta{{"band_index", c.band_index},
              {"band", band_json(band)},
              {"k_max", rounded(std::numbers::pi / (2.0 * model.params.half_period()))}};
    write_json(out, envelope(model.params_echo(c), std::move(rows), "dispersion", std::move(meta)));
    return exit_code::success;
}

int cmd_verify(const RunConfig &c, std::ostream &out)
{
    if (!c.potential_file.empty())
        throw InvalidConfig("invalid --potential-file: verify runs on the closed-form model only");
    const ModelParams params = resolve_params(c);
    const verify::Report report = verify::run_suite(params);

    auto status = [](const verify::Check &k) {
        return k.skipped ? "skipped" : (k.passed ? "pass" : "fail");
    };
    if (c.format == Format::csv) {
        out << "check,measured,threshold,status\n";
        for (const auto &k : report.checks)
            out << k.name << ',' << format_number(k.measured) << ',' << format_number(k.threshold)
                << ',' << status(k) << '\n';
    } else {
        json checks = json::array();
        for (const auto &k : report.checks) {
            json measured = std::isfinite(k.measured) ? json(rounded(k.measured)) : json(nullptr);
            checks.push_back({{"name", k.name},
                              {"description", k.description},
                              {"measured", std::move(measured)},
                              {"threshold", rounded(k.threshold)},
                              {"status", status(k)}});
        }
        write_json(out, envelope(params_json(params), json{{"checks", std::move(checks)}}, "verify",
                                 {{"passed", report.passed()}}));
    }
    return report.passed() ? exit_code::success : exit_code::verification_failure;
}

namespace {

void add_common_options(CLI::App &cmd, RunConfig &c, std::string &format)
{
    cmd.add_option("--mass", c.mass, "particle mass m")->capture_default_str();
    cmd.add_option("--lambda", c.lambda, "bound-state energy lambda (gamma derived; default 1)");
    cmd.add_option("--gamma", c.gamma, "soliton steepness gamma (lambda derived)");
    cmd.add_option("--half-period", c.half_period, "half period a (period 2a)")
        ->capture_default_str();
    cmd.add_option("--emin", c.e_min, "lower energy bound")->capture_default_str();
    cmd.add_option("--emax", c.e_max, "upper energy bound")->capture_default_str();
    cmd.add_option("--samples", c.samples, "number of output rows")->capture_default_str();
    cmd.add_option("--tol", c.tol, "band-edge bisection tolerance")->capture_default_str();
    cmd.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd.add_option("--out", c.output_path, "output file (default: stdout)");
    cmd.add_option(
        "--potential-file", c.potential_file,
        "two-column CSV (x, S) on one cell [-a, a]; D(E) then comes from the RK4 oracle");
    cmd.add_option("--alpha-scale", c.alpha_scale)->group("");
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Band structure of the periodized one-soliton scalar potential for the 1D Dirac "
                 "equation",
                 "diracband"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "csv";

    auto *potential = app.add_subcommand("potential", "periodized potential profile (x, s1)");
    auto *lyap = app.add_subcommand("lyapunov", "Lyapunov function trace (e, d, regime)");
    auto *bands = app.add_subcommand("bands", "band edges and band table");
    auto *disp = app.add_subcommand("dispersion", "dispersion law K(E) of one allowed band");
    auto *ver = app.add_subcommand("verify", "run the self-check suite");
    for (auto *cmd : {potential, lyap, bands, disp, ver})
        add_common_options(*cmd, config, format);
    bands->add_flag("--verify", config.verify, "cross-check every edge against the RK4 oracle");
    disp->add_option("--band-index", config.band_index,
                     "allowed band: 0 = lowest above zero, -1 = highest below zero")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_code::success;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::success;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_code::validation_failure;
    }
    config.format = format == "json" ? Format::json : Format::csv;

    try {
        std::ostringstream buffer;
        int code = exit_code::success;
        if (*potential)
            code = cmd_potential(config, buffer);
        else if (*lyap)
            code = cmd_lyapunov(config, buffer);
        else if (*bands)
            code = cmd_bands(config, buffer);
        else if (*disp)
            code = cmd_dispersion(config, buffer);
        else
            code = cmd_verify(config, buffer);

        if (config.output_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(config.output_path, std::ios::binary);
            file << buffer.str();
            file.close();
            if (!file) {
                err << "error: cannot write '" << config.output_path << "'\n";
                return exit_code::computation_error;
            }
        }
        return code;
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << '\n';
        return exit_code::validation_failure;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_code::computation_error;
    }
}

} // namespace diracband::cli
