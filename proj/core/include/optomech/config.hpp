#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "optomech/conditioning.hpp"
#include "optomech/model.hpp"

namespace optomech {

// Simulation inputs as plain `key = value` text. Frequencies are entered in
// Hz and converted to angular rates when the physical parameter set is
// built. Unknown keys are rejected, not ignored: a typo in a config file
// must fail loudly rather than silently fall back to a default.
struct SimConfig {
    double omega_m_hz = 1e7;
    double omega_c_hz = 3.7e14;
    std::optional<double> omega_o_hz; // drive laser frequency; `auto` follows omega_c_hz
    double drive_e_hz = 1.438640487e12;
    double g0_hz = 222.816920;
    double temperature_k = 0.4;
    double finesse = 1e4;
    double length_m = 1e-3;
    double quality_factor = 1e5;
    double detuning_over_omega_m = 1.0;
    double chi = 1.0;

    // Direct field decay rate in Hz. The default pins the full-linewidth
    // convention kappa = pi c / (L F); set `kappa_hz = auto` to derive the
    // half-linewidth value from finesse and length instead.
    std::optional<double> kappa_hz = 1.49896229e7;

    std::string conditioning = "none";  // none|homodyne|vacuum|ancilla:<theta_over_pi>
    std::string vacuum_offset = "half"; // half|one
    int wigner_points = 201;            // grid resolution per axis
    int wigner_stride = 20;             // export every Nth sweep point

    // Angular-frequency parameter set; throws ConfigError on bad key values
    // (DomainError surfaces later from validation if the physics is off).
    PhysicalParams params() const;

    // Parsed conditioning strategy including the vacuum offset switch.
    ConditioningChoice conditioning_choice() const;
};

// Reads `key = value` lines; '#' starts a comment, blank lines are skipped.
// Throws ConfigError on malformed lines, unknown keys, or unparseable values.
SimConfig parse_config(std::istream& in);

// Throws IoError when the file cannot be opened.
SimConfig load_config(const std::filesystem::path& file);

} // namespace optomech
