#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "probespec/system.hpp"

namespace probespec {

// Configuration or input error: maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { Analyze, Spectrum, Compare, Sweep };

std::string run_mode_name(RunMode mode);

// Detuning grid as (min, max, points), expanded on demand.
struct GridSpec {
    double min = -3.0;
    double max = 3.0;
    int points = 801;

    std::vector<double> values() const;
};

// One run's worth of validated parameters.  Parsed from a plain-text
// key = value document ('#' starts a comment).  Recognized keys:
//
//   F_g, F_e          half-integers ("2", "3/2", "1.5");  required
//   omega_c_rabi      coupling Rabi frequency, >= 0;      required
//   gamma             excited-state decay rate, > 0       (default 1)
//   theta_degrees     probe polarization angle in [0,180] (default 90)
//   probe_rabi        probe Rabi frequency, >= 0          (default 0.05)
//   grid              min:max:points, min < max, points >= 3
//                                                         (default -3:3:801)
//   mode              analyze | spectrum | compare | sweep (optional; the
//                     CLI verb decides the action and overrides this)
//   sweep_values      comma-separated coupling Rabi list, each >= 0;
//                     required nonempty when mode = sweep
//   output_dir        where reports are written (CLI --out overrides)
//
// Unknown keys are rejected, as are keys asking for an off-resonant
// coupling field (unsupported by the model).  All computations driven by a
// config are deterministic; there is nothing to seed.
struct RunConfig {
    HalfInt F_g{0};
    HalfInt F_e{0};
    double omega_c_rabi = 0.0;
    double gamma = 1.0;
    double theta_degrees = 90.0;
    double probe_rabi = 0.05;
    GridSpec grid;
    RunMode mode = RunMode::Analyze;
    bool mode_set = false;
    std::vector<double> sweep_values;
    std::string output_dir;
};

// Parses and validates a config document.  Throws ConfigError with the
// offending key in the message.
RunConfig parse_config(const std::string& text);

// Reads the file and parses it; file errors become ConfigError.
RunConfig load_config_file(const std::string& path);

// Parses a "min:max:points" grid override (the CLI --grid flag).
GridSpec parse_grid_spec(const std::string& text);

// Builds the physical system a config describes (angle converted to
// radians; the coupling phase is gauge and fixed to zero).
TransitionSystem make_system(const RunConfig& cfg);

}  // namespace probespec
