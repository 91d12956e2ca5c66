#pragma once

#include <optional>

#include "optomech/linalg.hpp"

namespace optomech {

// Laboratory-level inputs. All frequencies and rates are angular (rad/s);
// configuration files carry Hz and are converted on load.
struct PhysicalParams {
    double omega_m = 0.0;        // mechanical angular frequency
    double omega_c = 0.0;        // cavity angular frequency
    double omega_o = 0.0;        // drive laser angular frequency (bookkeeping only)
    double drive_E = 0.0;        // drive coupling rate
    double g0 = 0.0;             // bare radiation-pressure coupling
    double temperature = 0.0;    // kelvin
    double finesse = 0.0;
    double cavity_length = 0.0;  // meters
    double quality_factor = 0.0; // mechanical Q
    double detuning = 0.0;       // effective detuning, free input
    double chi = 1.0;            // coupling scale in [0, 1]

    // Direct cavity decay rate. When set it takes precedence over the
    // finesse/length derivation; the default configuration uses this to pin
    // the decay convention explicitly.
    std::optional<double> kappa = std::nullopt;

    // Throws DomainError when an invariant is violated.
    void validate() const;
};

struct ModelDerived {
    double kappa;    // cavity field decay rate
    double gamma_m;  // mechanical damping, omega_m / Q
    double n_th;     // thermal bath occupancy
    double G;        // drive-enhanced coupling
    double g;        // chi * G, the coupling that enters the drift matrix
};

struct ModelMatrices {
    Mat K; // 4x4 drift, basis (dq, dp, dx, dy)
    Mat D; // 4x4 diagonal diffusion
    ModelDerived derived;
};

// kappa = pi c / (2 L F): amplitude half-linewidth from finesse and length.
double derive_kappa(double finesse, double cavity_length);

// Bose-Einstein occupancy of the mechanical bath; exactly 0 at T = 0.
double thermal_occupation(double omega_m, double temperature);

// G = g0 E / sqrt(kappa^2 + detuning^2).
double coupling_G(double g0, double drive_E, double kappa, double detuning);

ModelMatrices build_model(const PhysicalParams& params);

// True iff every drift eigenvalue has a strictly negative real part.
bool stability(const PhysicalParams& params);

// Convenience: build_model + solve_lyapunov.
Mat steady_state(const PhysicalParams& params);

} // namespace optomech
