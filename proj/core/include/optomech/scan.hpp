#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "optomech/config.hpp"

namespace optomech {

// One record of a parameter sweep. Optionals stay disengaged when a column
// does not apply to the scan kind or the point is unstable; they print as
// empty CSV cells, never as fabricated numbers.
struct ScanRow {
    double sweep_value = 0.0;
    bool stable = false;

    std::optional<double> n_bar_M, s_M, phi_M;
    std::optional<double> n_bar_F, s_F, phi_F;
    std::optional<double> E_N_mirror_cavity;

    // conditioned mirror columns (detuning scans with conditioning on)
    std::optional<double> n_bar_M_hom, s_M_hom;
    std::optional<double> n_bar_M_vac, s_M_vac;

    // ancilla chain columns (theta scans, or detuning scans with an
    // ancilla strategy configured)
    std::optional<double> n_bar_M_anc, s_M_anc;
    std::optional<double> E_mc, E_ma, E_ca;

    // first unexpected per-point failure; instability is not an error
    std::string note;
};

enum class ScanKind { detuning, chi, theta };

// Default grids; chosen fine enough that peak-location checks resolve to one
// step. sweep_value is dimensionless in every scan: detuning in units of
// omega_m, chi itself, theta in units of pi.
std::vector<double> default_detuning_grid(); // 0.01 .. 2.00, step 0.01
std::vector<double> default_chi_grid();      // 0 .. 1, step 0.01
std::vector<double> default_theta_grid();    // 0 .. 1, step 0.01 (units of pi)

// Sweep over the detuning. With a conditioning strategy configured, the
// homodyne and vacuum conditioned-mirror columns are filled in (plus the
// ancilla columns when the strategy is the ancilla chain).
std::vector<ScanRow> scan_detuning(const SimConfig& cfg,
                                   const std::vector<double>& delta_over_omega_m);

// Sweep over the coupling scale at zero detuning (the regime where those
// scaling laws live); the config detuning is ignored here.
std::vector<ScanRow> scan_chi(const SimConfig& cfg, const std::vector<double>& chi_values);

// Sweep over the cavity-ancilla mixing angle at the configured detuning,
// filling the pairwise-entanglement and ancilla-conditioned columns.
std::vector<ScanRow> scan_theta(const SimConfig& cfg,
                                const std::vector<double>& theta_over_pi);

// Column names for the CSV of a given scan, in print order.
std::vector<std::string> scan_columns(ScanKind kind, const ConditioningChoice& choice);

// '#'-prefixed header line, then one comma-separated row per point, numbers
// with 12 significant digits, disengaged cells empty.
void write_scan_csv(const std::vector<ScanRow>& rows, const std::vector<std::string>& columns,
                    std::ostream& os);

// The (s_M, E_N) curve of a detuning scan traversed in sweep order, each
// point labeled by its position relative to the squeezing maximum. Rows
// lacking either value are skipped.
struct HysteresisRow {
    double s_M;
    double E_N;
    std::string branch; // "ascending" up to and including argmax s_M
};

std::vector<HysteresisRow> hysteresis_rows(const std::vector<ScanRow>& detuning_rows);
void write_hysteresis_csv(const std::vector<HysteresisRow>& rows, std::ostream& os);

// Writes wigner_<subsystem>_<index>.csv for every wigner_stride-th stable
// grid point into out_dir and returns the file names. The mirror subsystem
// honors the configured conditioning chain; the field subsystem is always
// the unconditioned cavity block. Grids span 6 standard deviations with
// cfg.wigner_points per axis.
std::vector<std::string> export_wigner(const SimConfig& cfg, ScanKind kind,
                                       const std::string& subsystem,
                                       const std::vector<double>& grid,
                                       const std::filesystem::path& out_dir);

// CLI driver: runs the requested scan on its default grid, writes
// scan_<kind>.csv (plus hysteresis.csv for detuning scans), the closed-form
// comparison report on request, and Wigner exports on request.
struct RunOptions {
    ScanKind kind = ScanKind::detuning;
    bool oracle = false;
    std::optional<std::string> wigner; // "mirror" or "field"
    std::filesystem::path out_dir;
};

void run_scan(const SimConfig& cfg, const RunOptions& options);

} // namespace optomech
