#include "optomech/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>

#include "optomech/closed_form.hpp"
#include "optomech/conditioning.hpp"
#include "optomech/errors.hpp"
#include "optomech/state.hpp"

namespace optomech {

namespace {

std::vector<double> arithmetic_grid(double first, double step, int count)
{
    std::vector<double> g(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        g[static_cast<size_t>(i)] = first + step * i;
    return g;
}

std::string sanitize_note(std::string text)
{
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r')
            c = ';';
    return text;
}

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Shared per-point body: steady state, both local fits, entanglement.
void fill_unconditioned(ScanRow& row, const PhysicalParams& p)
{
    const CovMat V(steady_state(p));
    const auto mirror = fit_squeezed_thermal(V.block({0}));
    const auto field = fit_squeezed_thermal(V.block({1}));
    row.n_bar_M = mirror.n_bar;
    row.s_M = mirror.s;
    row.phi_M = mirror.phi;
    row.n_bar_F = field.n_bar;
    row.s_F = field.s;
    row.phi_F = field.phi;
    row.E_N_mirror_cavity = log_negativity(V);
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open output file: " + path.string());
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace

std::vector<double> default_detuning_grid() { return arithmetic_grid(0.01, 0.01, 200); }
std::vector<double> default_chi_grid() { return arithmetic_grid(0.0, 0.01, 101); }
std::vector<double> default_theta_grid() { return arithmetic_grid(0.0, 0.01, 101); }

std::vector<ScanRow> scan_detuning(const SimConfig& cfg,
                                   const std::vector<double>& delta_over_omega_m)
{
    if (delta_over_omega_m.empty())
        throw DomainError("empty detuning grid");
    const ConditioningChoice choice = cfg.conditioning_choice();
    const bool conditioned = choice.strategy != Strategy::none;

    std::vector<ScanRow> rows;
    rows.reserve(delta_over_omega_m.size());
    for (double ratio : delta_over_omega_m) {
        ScanRow row;
        row.sweep_value = ratio;
        PhysicalParams p = cfg.params();
        p.detuning = ratio * p.omega_m;
        try {
            if (stability(p)) {
                row.stable = true;
                fill_unconditioned(row, p);
                if (conditioned) {
                    ConditioningChoice hom = choice;
                    hom.strategy = Strategy::homodyne_cavity;
                    ConditioningChoice vac = choice;
                    vac.strategy = Strategy::vacuum_cavity;
                    const auto hfit = conditioned_mirror(p, hom);
                    const auto vfit = conditioned_mirror(p, vac);
                    row.n_bar_M_hom = hfit.n_bar;
                    row.s_M_hom = hfit.s;
                    row.n_bar_M_vac = vfit.n_bar;
                    row.s_M_vac = vfit.s;
                    if (choice.strategy == Strategy::ancilla_vacuum) {
                        const auto afit = conditioned_mirror(p, choice);
                        row.n_bar_M_anc = afit.n_bar;
                        row.s_M_anc = afit.s;
                    }
                }
            }
        } catch (const Error& e) {
            row.note = sanitize_note(e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ScanRow> scan_chi(const SimConfig& cfg, const std::vector<double>& chi_values)
{
    if (chi_values.empty())
        throw DomainError("empty chi grid");
    std::vector<ScanRow> rows;
    rows.reserve(chi_values.size());
    for (double chi : chi_values) {
        ScanRow row;
        row.sweep_value = chi;
        PhysicalParams p = cfg.params();
        p.detuning = 0.0; // the scaling laws under test live at zero detuning
        p.chi = chi;
        try {
            if (stability(p)) {
                row.stable = true;
                fill_unconditioned(row, p);
            }
        } catch (const Error& e) {
            row.note = sanitize_note(e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ScanRow> scan_theta(const SimConfig& cfg, const std::vector<double>& theta_over_pi)
{
    if (theta_over_pi.empty())
        throw DomainError("empty theta grid");
    const ConditioningChoice base_choice = cfg.conditioning_choice();

    std::vector<ScanRow> rows;
    rows.reserve(theta_over_pi.size());
    for (double ratio : theta_over_pi) {
        ScanRow row;
        row.sweep_value = ratio;
        const double theta = ratio * std::numbers::pi;
        PhysicalParams p = cfg.params();
        try {
            if (stability(p)) {
                row.stable = true;
                fill_unconditioned(row, p);
                const auto tri = tripartite_scan(p, theta);
                row.E_mc = tri.mirror_cavity;
                row.E_ma = tri.mirror_ancilla;
                row.E_ca = tri.cavity_ancilla;
                ConditioningChoice anc = base_choice;
                anc.strategy = Strategy::ancilla_vacuum;
                anc.theta = theta;
                const auto afit = conditioned_mirror(p, anc);
                row.n_bar_M_anc = afit.n_bar;
                row.s_M_anc = afit.s;
            }
        } catch (const Error& e) {
            row.note = sanitize_note(e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> scan_columns(ScanKind kind, const ConditioningChoice& choice)
{
    std::vector<std::string> cols = {"sweep_value", "stable",  "n_bar_M",
                                     "s_M",         "phi_M",   "n_bar_F",
                                     "s_F",         "phi_F",   "E_N_mirror_cavity"};
    if (kind == ScanKind::detuning && choice.strategy != Strategy::none) {
        cols.insert(cols.end(), {"n_bar_M_hom", "s_M_hom", "n_bar_M_vac", "s_M_vac"});
        if (choice.strategy == Strategy::ancilla_vacuum)
            cols.insert(cols.end(), {"n_bar_M_anc", "s_M_anc"});
    }
    if (kind == ScanKind::theta)
        cols.insert(cols.end(), {"E_mc", "E_ma", "E_ca", "n_bar_M_anc", "s_M_anc"});
    cols.push_back("note");
    return cols;
}

void write_scan_csv(const std::vector<ScanRow>& rows, const std::vector<std::string>& columns,
                    std::ostream& os)
{
    using Getter = std::function<std::string(const ScanRow&)>;
    auto opt = [](std::optional<double> ScanRow::* member) {
        return [member](const ScanRow& r) {
            return (r.*member) ? format_value(*(r.*member)) : std::string();
        };
    };
    const std::map<std::string, Getter> getters = {
        {"sweep_value", [](const ScanRow& r) { return format_value(r.sweep_value); }},
        {"stable", [](const ScanRow& r) { return std::string(r.stable ? "1" : "0"); }},
        {"n_bar_M", opt(&ScanRow::n_bar_M)},
        {"s_M", opt(&ScanRow::s_M)},
        {"phi_M", opt(&ScanRow::phi_M)},
        {"n_bar_F", opt(&ScanRow::n_bar_F)},
        {"s_F", opt(&ScanRow::s_F)},
        {"phi_F", opt(&ScanRow::phi_F)},
        {"E_N_mirror_cavity", opt(&ScanRow::E_N_mirror_cavity)},
        {"n_bar_M_hom", opt(&ScanRow::n_bar_M_hom)},
        {"s_M_hom", opt(&ScanRow::s_M_hom)},
        {"n_bar_M_vac", opt(&ScanRow::n_bar_M_vac)},
        {"s_M_vac", opt(&ScanRow::s_M_vac)},
        {"n_bar_M_anc", opt(&ScanRow::n_bar_M_anc)},
        {"s_M_anc", opt(&ScanRow::s_M_anc)},
        {"E_mc", opt(&ScanRow::E_mc)},
        {"E_ma", opt(&ScanRow::E_ma)},
        {"E_ca", opt(&ScanRow::E_ca)},
        {"note", [](const ScanRow& r) { return r.note; }},
    };

    os << "# ";
    for (size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << '\n';

    for (const ScanRow& row : rows) {
        for (size_t i = 0; i < columns.size(); ++i) {
            const auto it = getters.find(columns[i]);
            if (it == getters.end())
                throw DomainError("unknown scan column '" + columns[i] + "'");
            os << (i ? "," : "") << it->second(row);
        }
        os << '\n';
    }
}

std::vector<HysteresisRow> hysteresis_rows(const std::vector<ScanRow>& detuning_rows)
{
    std::vector<HysteresisRow> out;
    for (const ScanRow& r : detuning_rows)
        if (r.s_M && r.E_N_mirror_cavity)
            out.push_back(HysteresisRow{*r.s_M, *r.E_N_mirror_cavity, ""});
    if (out.empty())
        return out;

    const auto peak = std::max_element(out.begin(), out.end(),
                                       [](const auto& a, const auto& b) { return a.s_M < b.s_M; });
    for (auto it = out.begin(); it != out.end(); ++it)
        it->branch = it <= peak ? "ascending" : "descending";
    return out;
}

void write_hysteresis_csv(const std::vector<HysteresisRow>& rows, std::ostream& os)
{
    os << "# s_M,E_N,branch\n";
    for (const HysteresisRow& r : rows)
        os << format_value(r.s_M) << ',' << format_value(r.E_N) << ',' << r.branch << '\n';
}

std::vector<std::string> export_wigner(const SimConfig& cfg, ScanKind kind,
                                       const std::string& subsystem,
                                       const std::vector<double>& grid,
                                       const std::filesystem::path& out_dir)
{
    if (subsystem != "mirror" && subsystem != "field")
        throw ConfigError("wigner subsystem must be 'mirror' or 'field', got '" + subsystem + "'");
    const ConditioningChoice choice = cfg.conditioning_choice();

    std::vector<std::string> written;
    for (size_t i = 0; i < grid.size(); i += static_cast<size_t>(cfg.wigner_stride)) {
        const double value = grid[i];
        PhysicalParams p = cfg.params();
        ConditioningChoice local = choice;
        switch (kind) {
        case ScanKind::detuning:
            p.detuning = value * p.omega_m;
            break;
        case ScanKind::chi:
            p.detuning = 0.0;
            p.chi = value;
            break;
        case ScanKind::theta:
            // the theta sweep is about the ancilla chain; the mirror export
            // follows it regardless of the configured strategy
            local.strategy = Strategy::ancilla_vacuum;
            local.theta = value * std::numbers::pi;
            break;
        }
        if (!stability(p))
            continue;

        Mat block;
        if (subsystem == "mirror")
            block = conditioned_mirror_block(p, local);
        else
            block = CovMat(steady_state(p)).block({1}).matrix();

        const WignerGrid w = wigner_grid_auto(CovMat(std::move(block)), cfg.wigner_points);
        char name[64];
        std::snprintf(name, sizeof name, "wigner_%s_%03zu.csv", subsystem.c_str(), i);
        const auto path = out_dir / name;
        auto out = open_output(path);
        write_wigner_csv(w, out);
        finish_output(out, path);
        written.emplace_back(name);
    }
    return written;
}

void run_scan(const SimConfig& cfg, const RunOptions& options)
{
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + options.out_dir.string() + ": "
                      + ec.message());

    std::vector<double> grid;
    std::vector<ScanRow> rows;
    std::string csv_name;
    switch (options.kind) {
    case ScanKind::detuning:
        grid = default_detuning_grid();
        rows = scan_detuning(cfg, grid);
        csv_name = "scan_detuning.csv";
        break;
    case ScanKind::chi:
        grid = default_chi_grid();
        rows = scan_chi(cfg, grid);
        csv_name = "scan_chi.csv";
        break;
    case ScanKind::theta:
        grid = default_theta_grid();
        rows = scan_theta(cfg, grid);
        csv_name = "scan_theta.csv";
        break;
    }

    {
        const auto path = options.out_dir / csv_name;
        auto out = open_output(path);
        write_scan_csv(rows, scan_columns(options.kind, cfg.conditioning_choice()), out);
        finish_output(out, path);
    }

    if (options.kind == ScanKind::detuning) {
        const auto path = options.out_dir / "hysteresis.csv";
        auto out = open_output(path);
        write_hysteresis_csv(hysteresis_rows(rows), out);
        finish_output(out, path);
    }

    if (options.oracle) {
        const auto path = options.out_dir / "oracle.csv";
        auto out = open_output(path);
        write_oracle_csv(oracle_report(cfg.params()), out);
        // Vanishing-drive diagnostic: documents how the two grouping
        // conventions behave where the mirror must simply thermalize.
        out << "# small-coupling limit: expected s -> 0, n -> n_th\n";
        for (const SmallCouplingRow& r : small_coupling_limit(cfg.params())) {
            out << "# drive_scale=" << format_value(r.drive_scale)
                << " s_homogeneous=" << format_value(r.s_homogeneous)
                << " n_homogeneous=" << format_value(r.n_homogeneous)
                << " s_inhomogeneous=" << format_value(r.s_inhomogeneous)
                << " n_inhomogeneous=" << format_value(r.n_inhomogeneous) << '\n';
        }
        finish_output(out, path);
    }

    if (options.wigner)
        export_wigner(cfg, options.kind, *options.wigner, grid, options.out_dir);
}

} // namespace optomech
