#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hyperfront {

inline constexpr const char* kVersion = "0.1.0";

/// Runtime parameters shared by the command-line experiments.  Serializes to
/// (and parses from) a line-oriented `key = value` format with `#` comments;
/// unknown keys are errors.
struct ExperimentConfig {
    double epsilon = 0.5;
    std::vector<double> epsilons;   ///< multi-epsilon commands (scan, dispersion)
    std::optional<double> speed;    ///< default: minimal speed for epsilon
    std::string growth = "logistic";
    double rate = 1.0;
    double a = -30.0;
    double b = 120.0;
    double dx = 0.05;
    double t_end = 60.0;
    double cfl = 0.9;
    double snapshot_every = 1.0;
    std::string ic = "step";        ///< step | front
    double level = 0.5;
    double discard = 0.5;
    std::string out = "out";
    int jobs = 0;                   ///< 0 = all hardware threads
    std::string mode = "linearized";  ///< stability: linearized | nonlinear
    double amplitude = 0.01;        ///< stability perturbation
    double width = 2.0;
    std::optional<double> center;   ///< default: half-level point
    bool critical = false;          ///< pin the exact critical regime

    /// Set one key; `where` names the source (file:line or flag) for errors.
    void set(const std::string& key, const std::string& value, const std::string& where);
    /// Throws ValidationError on inconsistent values (a >= b, cfl out of
    /// (0,1), ...).
    void validate() const;
    /// Render as the config-file format, one key per line, `prefix` prepended
    /// (use "# " to embed in CSV headers).
    std::string render(const std::string& prefix = "") const;
};

/// Parse a `key = value` file; `#` starts a comment, blank lines are skipped.
/// Malformed lines and unknown keys raise ValidationError with the line
/// number.
ExperimentConfig parse_config_file(const std::string& path);
void parse_config_text(const std::string& text, const std::string& name,
                       ExperimentConfig& cfg);

/// Grid/time presets mirroring the three reference experiments:
/// fig1a (eps = 0.5), fig1b (eps = 1), fig1c (eps = 2).
void apply_preset(ExperimentConfig& cfg, const std::string& name);

/// Shortest decimal form that round-trips to the same double ("0.1", "1e-06",
/// "nan"); used everywhere a float is written, so outputs are byte-stable.
std::string format_double(double v);

}  // namespace hyperfront
