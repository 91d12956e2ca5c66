#include "optomech/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "optomech/constants.hpp"
#include "optomech/errors.hpp"

namespace optomech {

void PhysicalParams::validate() const
{
    std::ostringstream bad;
    if (!(omega_m > 0.0)) bad << "omega_m must be > 0; ";
    if (!(drive_E > 0.0)) bad << "drive_E must be > 0; ";
    if (!(g0 > 0.0)) bad << "g0 must be > 0; ";
    if (!(finesse > 0.0)) bad << "finesse must be > 0; ";
    if (!(cavity_length > 0.0)) bad << "cavity_length must be > 0; ";
    if (!(quality_factor > 0.0)) bad << "quality_factor must be > 0; ";
    if (!(temperature >= 0.0)) bad << "temperature must be >= 0; ";
    if (!(chi >= 0.0 && chi <= 1.0)) bad << "chi must lie in [0, 1]; ";
    if (kappa && !(*kappa > 0.0)) bad << "kappa override must be > 0; ";
    const std::string msg = bad.str();
    if (!msg.empty())
        throw DomainError("invalid physical parameters: " + msg);
}

double derive_kappa(double finesse, double cavity_length)
{
    if (!(finesse > 0.0) || !(cavity_length > 0.0))
        throw DomainError("derive_kappa requires positive finesse and length");
    return std::numbers::pi * constants::c_light / (2.0 * cavity_length * finesse);
}

double thermal_occupation(double omega_m, double temperature)
{
    if (!(omega_m > 0.0) || temperature < 0.0)
        throw DomainError("thermal_occupation requires omega_m > 0 and T >= 0");
    if (temperature == 0.0)
        return 0.0;
    const double x = constants::hbar * omega_m / (constants::k_boltzmann * temperature);
    return 1.0 / std::expm1(x);
}

double coupling_G(double g0, double drive_E, double kappa, double detuning)
{
    if (!(kappa > 0.0))
        throw DomainError("coupling_G requires kappa > 0");
    return g0 * drive_E / std::sqrt(kappa * kappa + detuning * detuning);
}

ModelMatrices build_model(const PhysicalParams& p)
{
    p.validate();

    ModelDerived d;
    d.kappa = p.kappa ? *p.kappa : derive_kappa(p.finesse, p.cavity_length);
    d.gamma_m = p.omega_m / p.quality_factor;
    d.n_th = thermal_occupation(p.omega_m, p.temperature);
    d.G = coupling_G(p.g0, p.drive_E, d.kappa, p.detuning);
    d.g = p.chi * d.G;

    Mat K = Mat::Zero(4, 4);
    K(0, 1) = p.omega_m;
    K(1, 0) = -p.omega_m;
    K(1, 1) = -d.gamma_m;
    K(1, 2) = d.g;
    K(2, 2) = -d.kappa;
    K(2, 3) = p.detuning;
    K(3, 0) = d.g;
    K(3, 2) = -p.detuning;
    K(3, 3) = -d.kappa;

    Mat D = Mat::Zero(4, 4);
    // No position noise: the momentum row carries the thermal drive, the
    // field rows the vacuum input at variance 1/2 (2 kappa * 1/2 = kappa).
    D(1, 1) = d.gamma_m * (2.0 * d.n_th + 1.0);
    D(2, 2) = d.kappa;
    D(3, 3) = d.kappa;

    return ModelMatrices{std::move(K), std::move(D), d};
}

bool stability(const PhysicalParams& params)
{
    return spectral_abscissa(build_model(params).K) < 0.0;
}

Mat steady_state(const PhysicalParams& params)
{
    const ModelMatrices m = build_model(params);
    return solve_lyapunov(m.K, m.D);
}

} // namespace optomech
