#pragma once

// Command-line front end. Each command renders its artifact into a stream so
// the same code path serves the executable and the tests.

#include "diracband/errors.hpp"
#include "diracband/soliton.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace diracband::cli {

inline constexpr const char *artifact_version = "1.0.0";

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int validation_failure = 1;
inline constexpr int computation_error = 2;
inline constexpr int verification_failure = 3;
} // namespace exit_code

enum class Format { csv, json };

struct RunConfig {
    double mass = 2.0;
    std::optional<double> lambda;
    std::optional<double> gamma;
    double half_period = 1.0;
    double e_min = -7.0;
    double e_max = 7.0;
    int samples = 1401;
    double tol = 1e-9;
    Format format = Format::csv;
    std::string output_path;
    int band_index = 0;
    bool verify = false;
    std::string potential_file;
    /// Multiplies alpha after the parameters are resolved (verification hook).
    double alpha_scale = 1.0;
};

/// Rejected configuration; the message names the offending field.
class InvalidConfig : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Checks every RunConfig invariant and returns the model parameters. When
/// neither lambda nor gamma is given, lambda = 1 is assumed.
ModelParams resolve_params(const RunConfig &config);

/// Locale-independent, 12 significant digits.
std::string format_number(double value);

/// Each command writes its artifact to `out` and returns an exit code.
int cmd_potential(const RunConfig &config, std::ostream &out);
int cmd_lyapunov(const RunConfig &config, std::ostream &out);
int cmd_bands(const RunConfig &config, std::ostream &out);
int cmd_dispersion(const RunConfig &config, std::ostream &out);
int cmd_verify(const RunConfig &config, std::ostream &out);

/// Parse argv, dispatch, write to --out (or `out`) and map errors to exit codes.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace diracband::cli
