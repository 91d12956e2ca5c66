#include "optomech/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "optomech/errors.hpp"
#include "optomech/state.hpp"

namespace optomech {

ClosedFormContext closed_form_context(const PhysicalParams& params, Grouping grouping)
{
    const ModelDerived d = build_model(params).derived;
    const double wm = params.omega_m;
    const double dt = params.detuning;
    const double k = d.kappa;
    const double G = d.g; // effective drift coupling, chi already applied

    ClosedFormContext c;
    c.N = 2.0 * d.n_th + 1.0;
    c.Gamma = d.gamma_m + 2.0 * k;
    c.gamma = k - c.Gamma;
    c.z2 = c.gamma * c.gamma + dt * dt;
    c.delta2 = k * k + dt * dt;

    const double wm2 = wm * wm, wm3 = wm2 * wm, wm4 = wm2 * wm2;
    const double G2 = G * G, G4 = G2 * G2;
    const double gpk = c.gamma + k;
    // quartic appearing in every bath term
    const double X = wm4 - 2.0 * wm2 * (c.gamma * k + dt * dt) + c.z2 * c.delta2;

    c.squeeze_num = G4 * wm * c.Gamma * k * dt
                    + 2.0 * c.N * k * gpk * c.delta2 * X
                    + G2 * (-2.0 * c.N * wm3 * k * gpk * dt
                            + 2.0 * wm2 * c.gamma * k * c.delta2
                            - 2.0 * k * k * c.z2 * c.delta2
                            + c.N * wm * dt * gpk
                                  * (2.0 * k * c.delta2 + c.Gamma * (dt * dt - 2.0 * k * k)));

    const double prefactor = -G2 * dt + wm * c.delta2;
    const double coupled = G2 * (-2.0 * wm2 * k * k
                                 + c.N * wm * c.Gamma * gpk * dt
                                 + 2.0 * c.gamma * k * c.delta2);
    const double bath_tail = 2.0 * c.N * k * gpk * X;
    c.squeeze_den = grouping == Grouping::homogeneous
                        ? prefactor * (coupled + bath_tail)
                        : prefactor * coupled + bath_tail;

    c.var_num = -G4 * wm * c.Gamma * k * dt
                - 2.0 * c.N * k * c.delta2 * gpk * X
                + G2 * (2.0 * c.N * wm3 * k * dt * gpk
                        + 2.0 * k * c.delta2 * (k * c.z2 - wm2 * c.gamma)
                        - c.N * wm * dt * gpk
                              * ((2.0 * c.gamma - c.Gamma) * k * k
                                 + (2.0 * k + c.Gamma) * dt * dt));

    c.var_den = 2.0 * prefactor * (-2.0 * wm4 * k * gpk
                                   + G2 * wm * c.Gamma * c.Gamma * dt
                                   + 4.0 * wm2 * k * gpk * (c.gamma * k + dt * dt)
                                   - 2.0 * k * gpk * c.z2 * c.delta2);
    return c;
}

namespace {

[[noreturn]] void domain_failure(const char* what, const PhysicalParams& p, double value)
{
    std::ostringstream msg;
    msg << what << " at detuning/omega_m = " << p.detuning / p.omega_m << " (value " << value
        << ")";
    throw DomainError(msg.str());
}

} // namespace

double squeezing_closed_form(const PhysicalParams& params, Grouping grouping)
{
    const ClosedFormContext c = closed_form_context(params, grouping);
    if (c.squeeze_den == 0.0)
        domain_failure("squeezing denominator vanishes", params, 0.0);
    const double ratio = params.omega_m * c.squeeze_num / c.squeeze_den;
    if (!(ratio > 0.0))
        domain_failure("non-positive squeezing log argument", params, ratio);
    return 0.25 * std::log(ratio);
}

double occupation_closed_form(const PhysicalParams& params, Grouping grouping)
{
    const ClosedFormContext c = closed_form_context(params, grouping);
    if (c.var_den == 0.0 || c.squeeze_num == 0.0)
        domain_failure("occupation denominator vanishes", params, 0.0);
    const double root_arg = params.omega_m * c.squeeze_den / c.squeeze_num;
    if (!(root_arg > 0.0))
        domain_failure("negative square-root argument", params, root_arg);
    return -0.5 + (c.var_num / c.var_den) * std::sqrt(root_arg);
}

std::vector<OracleRow> oracle_report(const PhysicalParams& base, int points)
{
    if (points < 1)
        throw DomainError("oracle_report needs at least one point");

    std::vector<double> stable_ratios;
    for (int j = 1; j <= 200; ++j) {
        PhysicalParams p = base;
        p.detuning = 0.01 * j * base.omega_m;
        if (stability(p))
            stable_ratios.push_back(0.01 * j);
    }
    if (stable_ratios.empty())
        throw DomainError("no stable detuning in the default grid");

    std::vector<OracleRow> rows;
    const int n = static_cast<int>(stable_ratios.size());
    const int count = std::min(points, n);
    for (int i = 0; i < count; ++i) {
        // evenly spaced indices across the stable sublist
        const int idx = count == 1 ? 0 : static_cast<int>(std::lround(double(i) * (n - 1) / (count - 1)));
        PhysicalParams p = base;
        p.detuning = stable_ratios[static_cast<size_t>(idx)] * base.omega_m;

        const auto fit = fit_squeezed_thermal(CovMat(steady_state(p)).block({0}));
        OracleRow row;
        row.delta_over_omega_m = stable_ratios[static_cast<size_t>(idx)];
        row.s_numeric = fit.s;
        row.n_numeric = fit.n_bar;
        row.s_analytic = squeezing_closed_form(p);
        row.n_analytic = occupation_closed_form(p);
        row.rel_err_s = std::abs(row.s_analytic - row.s_numeric) / std::max(std::abs(row.s_numeric), 1e-12);
        row.rel_err_n = std::abs(row.n_analytic - row.n_numeric) / std::max(std::abs(row.n_numeric), 1e-12);
        rows.push_back(row);
    }
    return rows;
}

void write_oracle_csv(const std::vector<OracleRow>& rows, std::ostream& os)
{
    os << "# delta_over_omega_m,s_analytic,s_numeric,n_analytic,n_numeric,rel_err_s,rel_err_n\n";
    char buf[64];
    for (const OracleRow& r : rows) {
        const double vals[] = {r.delta_over_omega_m, r.s_analytic, r.s_numeric, r.n_analytic,
                               r.n_numeric,          r.rel_err_s,  r.rel_err_n};
        for (size_t i = 0; i < 7; ++i) {
            std::snprintf(buf, sizeof buf, "%.12g", vals[i]);
            os << (i ? "," : "") << buf;
        }
        os << '\n';
    }
}

std::vector<SmallCouplingRow> small_coupling_limit(const PhysicalParams& base)
{
    // A domain failure in one reading is itself a reportable outcome, so it
    // lands in the row as NaN instead of aborting the report.
    auto guarded = [](auto&& f) {
        try {
            return f();
        } catch (const DomainError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    std::vector<SmallCouplingRow> rows;
    for (double scale : {1e-1, 1e-2, 1e-3, 1e-4}) {
        PhysicalParams p = base;
        p.drive_E = base.drive_E * scale;
        SmallCouplingRow row;
        row.drive_scale = scale;
        row.s_homogeneous = guarded([&] { return squeezing_closed_form(p, Grouping::homogeneous); });
        row.n_homogeneous = guarded([&] { return occupation_closed_form(p, Grouping::homogeneous); });
        row.s_inhomogeneous =
            guarded([&] { return squeezing_closed_form(p, Grouping::inhomogeneous); });
        row.n_inhomogeneous =
            guarded([&] { return occupation_closed_form(p, Grouping::inhomogeneous); });
        rows.push_back(row);
    }
    return rows;
}

} // namespace optomech
