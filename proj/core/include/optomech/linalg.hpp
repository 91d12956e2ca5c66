#pragma once

#include <Eigen/Dense>
#include <vector>

namespace optomech {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Real parts of all eigenvalues, sorted descending. Dense QR-based solver.
std::vector<double> spectrum_real_parts(const Mat& K);

// Largest eigenvalue real part (convenience wrapper around the above).
double spectral_abscissa(const Mat& K);

// Steady-state second moments: solves K V + V K^T = -D for symmetric V via
// the vectorized dense system (I (x) K + K (x) I) vec(V) = -vec(D).
// Throws UnstableDrift if K is not Hurwitz, SingularSystem if the linear
// system is rank-deficient.
Mat solve_lyapunov(const Mat& K, const Mat& D);

// Integrates dV/dt = K V + V K^T + D from V(0) = V0 to time t with an
// adaptive embedded Runge-Kutta scheme (Dormand-Prince 5(4)), local error
// per step kept below 1e-10. Throws StepFailure if the step size underflows.
Mat evolve_covariance(const Mat& K, const Mat& D, const Mat& V0, double t);

// Moore-Penrose pseudo-inverse of a symmetric PSD matrix. Eigenvalues with
// magnitude below 1e-10 * max|B| are treated as exact zeros so structural
// zeros (e.g. from quadrature projectors) are never resurrected.
Mat pseudo_inverse(const Mat& B);

} // namespace optomech
