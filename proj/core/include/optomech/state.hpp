#pragma once

#include <iosfwd>
#include <vector>

#include "optomech/linalg.hpp"

namespace optomech {

// Covariance matrix of an n-mode Gaussian state, mode order (q1,p1,...,qn,pn),
// vacuum variance 1/2. Construction enforces symmetry (to 1e-12 relative) and
// the uncertainty bound (every symplectic eigenvalue >= 1/2 - 1e-9).
class CovMat {
public:
    explicit CovMat(Mat V);

    static CovMat vacuum(int n_modes);

    int modes() const { return static_cast<int>(V_.rows() / 2); }
    const Mat& matrix() const { return V_; }

    // Principal submatrix of the selected modes (0-based), preserving order.
    CovMat block(const std::vector<int>& mode_indices) const;

    std::vector<double> symplectic_eigenvalues() const;

private:
    Mat V_;
};

// Effective squeezed-thermal description of a one-mode reduced state.
struct SqueezedThermalFit {
    double n_bar; // >= 0
    double s;     // >= 0
    double phi;   // in (-pi, pi]; 0 by convention when s == 0
};

// 2x2 symplectic one-mode squeezer:
//   [ cosh s - cos(phi) sinh s,      -sin(phi) sinh s        ]
//   [     -sin(phi) sinh s,      cosh s + cos(phi) sinh s    ]
// det = 1 for all inputs.
Mat symplectic_squeeze(double s, double phi);

// Inverts J = (n+1/2) * S(2s, phi) in closed form:
//   n  = sqrt(det J) - 1/2
//   s  = arccosh(Tr J / (2 sqrt(det J))) / 2
//   phi = atan2(-2 J12, J22 - J11)
SqueezedThermalFit fit_squeezed_thermal(const CovMat& J);

// W(alpha) = exp(-f J^{-1} f^T / 2) / (pi sqrt(det J)), f = sqrt(2)(ar, ai).
double wigner_value(const CovMat& J, double alpha_r, double alpha_i);

struct WignerGrid {
    std::vector<double> alpha_r_axis;
    std::vector<double> alpha_i_axis;
    Mat values; // values(i, j) = W(alpha_r_axis[i], alpha_i_axis[j])

    // Trapezoid quadrature of the grid; 1 within 1e-3 on a >= 6-sigma span.
    double integral() const;
};

WignerGrid wigner_grid(const CovMat& J, const std::vector<double>& alpha_r_axis,
                       const std::vector<double>& alpha_i_axis);

// Square grid spanning n_sigma standard deviations per axis.
WignerGrid wigner_grid_auto(const CovMat& J, int points_per_axis, double n_sigma = 6.0);

// E_N = max(0, -ln 2 nu-), nu- the smallest symplectic eigenvalue of the
// partial transpose (momentum sign flip on the second mode). Two-mode only.
double log_negativity(const CovMat& two_mode_state);

// 1 / (2^n sqrt(det V)); equals 1 exactly on pure states.
double purity(const CovMat& state);

// CSV rows (alpha_r, alpha_i, w), 12 significant digits, '#' header.
void write_wigner_csv(const WignerGrid& grid, std::ostream& os);

// Whitespace-separated value matrix, one alpha_i row per line; generic
// gnuplot-style block format.
void write_wigner_matrix(const WignerGrid& grid, std::ostream& os);

} // namespace optomech
