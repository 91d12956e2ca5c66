#include "optomech/state.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

// 2n x 2n symplectic form, direct sum of [[0,1],[-1,0]].
Mat symplectic_form(int n_modes)
{
    Mat O = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        O(2 * m, 2 * m + 1) = 1.0;
        O(2 * m + 1, 2 * m) = -1.0;
    }
    return O;
}

std::vector<double> symplectic_spectrum(const Mat& V)
{
    const int n = static_cast<int>(V.rows()) / 2;
    Eigen::EigenSolver<Mat> es(symplectic_form(n) * V, false);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("eigen-solver failed on the symplectic spectrum");
    std::vector<double> mags(static_cast<size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i)
        mags[static_cast<size_t>(i)] = std::abs(es.eigenvalues()[i]);
    std::sort(mags.begin(), mags.end());
    // magnitudes come in +/- pairs; keep one per pair
    std::vector<double> nu(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        nu[static_cast<size_t>(i)] = 0.5 * (mags[static_cast<size_t>(2 * i)] + mags[static_cast<size_t>(2 * i + 1)]);
    return nu;
}

void format_sig12(char* buf, size_t len, double v)
{
    std::snprintf(buf, len, "%.12g", v);
}

} // namespace

CovMat::CovMat(Mat V) : V_(std::move(V))
{
    if (V_.rows() != V_.cols() || V_.rows() % 2 != 0 || V_.rows() == 0)
        throw DomainError("covariance matrix must be square with even dimension");

    const double mag = std::max(1.0, V_.cwiseAbs().maxCoeff());
    const double asym = (V_ - V_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * mag) {
        std::ostringstream msg;
        msg << "covariance asymmetry " << asym << " exceeds 1e-12 * " << mag;
        throw DomainError(msg.str());
    }
    V_ = 0.5 * (V_ + V_.transpose());

    for (double nu : symplectic_spectrum(V_)) {
        if (nu < 0.5 - 1e-9) {
            std::ostringstream msg;
            msg << "unphysical covariance: symplectic eigenvalue " << nu << " < 1/2";
            throw DomainError(msg.str());
        }
    }
}

CovMat CovMat::vacuum(int n_modes)
{
    return CovMat(0.5 * Mat::Identity(2 * n_modes, 2 * n_modes));
}

CovMat CovMat::block(const std::vector<int>& mode_indices) const
{
    const int n = modes();
    for (int m : mode_indices)
        if (m < 0 || m >= n)
            throw IndexOutOfRange("mode index " + std::to_string(m) + " out of range for "
                                  + std::to_string(n) + " modes");

    const int k = static_cast<int>(mode_indices.size());
    Mat B(2 * k, 2 * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            B.block(2 * a, 2 * b, 2, 2) = V_.block(2 * mode_indices[static_cast<size_t>(a)],
                                                   2 * mode_indices[static_cast<size_t>(b)], 2, 2);
    return CovMat(std::move(B));
}

std::vector<double> CovMat::symplectic_eigenvalues() const
{
    return symplectic_spectrum(V_);
}

Mat symplectic_squeeze(double s, double phi)
{
    if (s < 0.0)
        throw DomainError("symplectic_squeeze requires s >= 0");
    Mat R(2, 2);
    R << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
    return std::cosh(s) * Mat::Identity(2, 2) - std::sinh(s) * R;
}

SqueezedThermalFit fit_squeezed_thermal(const CovMat& state)
{
    if (state.modes() != 1)
        throw DomainError("fit_squeezed_thermal takes a one-mode covariance");
    const Mat& J = state.matrix();

    const double det = J(0, 0) * J(1, 1) - J(0, 1) * J(0, 1);
    if (!(det > 0.0))
        throw SingularCovariance("non-positive determinant in squeezed-thermal fit");

    const double nu = std::sqrt(det);
    // Tr J >= 2 sqrt(det J) analytically; clamp the floating-point residue.
    const double arg = std::max(1.0, (J(0, 0) + J(1, 1)) / (2.0 * nu));

    SqueezedThermalFit fit;
    fit.n_bar = std::max(0.0, nu - 0.5);
    fit.s = 0.5 * std::acosh(arg);
    // An off-diagonal at rounding level is a structural zero; snapping it
    // keeps the degenerate angle on the +pi branch instead of letting the
    // noise sign pick between -pi and +pi.
    double off = J(0, 1);
    if (std::abs(off) <= 1e-12 * std::max(std::abs(J(0, 0)), std::abs(J(1, 1))))
        off = 0.0;
    // + 0.0 normalizes the signed zero for the same reason.
    fit.phi = (fit.s == 0.0) ? 0.0 : std::atan2(-2.0 * off + 0.0, J(1, 1) - J(0, 0) + 0.0);
    return fit;
}

double wigner_value(const CovMat& state, double alpha_r, double alpha_i)
{
    if (state.modes() != 1)
        throw DomainError("wigner_value takes a one-mode covariance");
    const Mat& J = state.matrix();
    const double det = J(0, 0) * J(1, 1) - J(0, 1) * J(0, 1);
    if (!(det > 0.0))
        throw SingularCovariance("non-positive determinant in Wigner evaluation");

    const double f0 = std::numbers::sqrt2 * alpha_r;
    const double f1 = std::numbers::sqrt2 * alpha_i;
    const double quad = (f0 * f0 * J(1, 1) - 2.0 * f0 * f1 * J(0, 1) + f1 * f1 * J(0, 0)) / det;
    return std::exp(-0.5 * quad) / (std::numbers::pi * std::sqrt(det));
}

WignerGrid wigner_grid(const CovMat& J, const std::vector<double>& alpha_r_axis,
                       const std::vector<double>& alpha_i_axis)
{
    for (const auto* axis : {&alpha_r_axis, &alpha_i_axis}) {
        if (axis->size() < 2)
            throw DomainError("wigner_grid axes need at least two points");
        for (size_t i = 1; i < axis->size(); ++i)
            if (!((*axis)[i] > (*axis)[i - 1]))
                throw DomainError("wigner_grid axes must be strictly increasing");
    }

    WignerGrid grid;
    grid.alpha_r_axis = alpha_r_axis;
    grid.alpha_i_axis = alpha_i_axis;
    grid.values.resize(static_cast<Eigen::Index>(alpha_r_axis.size()),
                       static_cast<Eigen::Index>(alpha_i_axis.size()));
    for (size_t i = 0; i < alpha_r_axis.size(); ++i)
        for (size_t j = 0; j < alpha_i_axis.size(); ++j)
            grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                wigner_value(J, alpha_r_axis[i], alpha_i_axis[j]);
    return grid;
}

WignerGrid wigner_grid_auto(const CovMat& J, int points_per_axis, double n_sigma)
{
    if (points_per_axis < 2)
        throw DomainError("wigner_grid_auto needs at least two points per axis");
    // alpha-space marginals carry half the quadrature variance (f = sqrt2 alpha).
    const double sr = std::sqrt(J.matrix()(0, 0) / 2.0);
    const double si = std::sqrt(J.matrix()(1, 1) / 2.0);

    auto linspace = [&](double sigma) {
        std::vector<double> ax(static_cast<size_t>(points_per_axis));
        const double lo = -n_sigma * sigma, hi = n_sigma * sigma;
        for (int k = 0; k < points_per_axis; ++k)
            ax[static_cast<size_t>(k)] = lo + (hi - lo) * k / (points_per_axis - 1);
        return ax;
    };
    return wigner_grid(J, linspace(sr), linspace(si));
}

double WignerGrid::integral() const
{
    // trapezoid along alpha_i for each alpha_r row, then along alpha_r
    const size_t nr = alpha_r_axis.size(), ni = alpha_i_axis.size();
    std::vector<double> row(nr, 0.0);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j + 1 < ni; ++j)
            row[i] += 0.5 * (alpha_i_axis[j + 1] - alpha_i_axis[j])
                      * (values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))
                         + values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)));
    double total = 0.0;
    for (size_t i = 0; i + 1 < nr; ++i)
        total += 0.5 * (alpha_r_axis[i + 1] - alpha_r_axis[i]) * (row[i] + row[i + 1]);
    return total;
}

double log_negativity(const CovMat& state)
{
    if (state.modes() != 2)
        throw DomainError("log_negativity supports two-mode states only");

    Mat P = Mat::Identity(4, 4);
    P(3, 3) = -1.0; // momentum flip on the second mode
    const Mat Vt = P * state.matrix() * P;

    Eigen::EigenSolver<Mat> es(symplectic_form(2) * Vt, false);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("eigen-solver failed on the partial transpose");
    double nu_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
        nu_min = std::min(nu_min, std::abs(es.eigenvalues()[i]));

    return std::max(0.0, -std::log(2.0 * nu_min));
}

double purity(const CovMat& state)
{
    const double det = state.matrix().determinant();
    if (!(det > 0.0))
        throw SingularCovariance("non-positive determinant in purity");
    return 1.0 / (std::pow(2.0, state.modes()) * std::sqrt(det));
}

void write_wigner_csv(const WignerGrid& grid, std::ostream& os)
{
    char a[64], b[64], c[64];
    os << "# alpha_r,alpha_i,w\n";
    for (size_t i = 0; i < grid.alpha_r_axis.size(); ++i)
        for (size_t j = 0; j < grid.alpha_i_axis.size(); ++j) {
            format_sig12(a, sizeof a, grid.alpha_r_axis[i]);
            format_sig12(b, sizeof b, grid.alpha_i_axis[j]);
            format_sig12(c, sizeof c, grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            os << a << ',' << b << ',' << c << '\n';
        }
}

void write_wigner_matrix(const WignerGrid& grid, std::ostream& os)
{
    // gnuplot "nonuniform matrix" layout: first row is the alpha_r axis
    // prefixed by the column count, following rows start with alpha_i.
    char buf[64];
    const size_t nr = grid.alpha_r_axis.size(), ni = grid.alpha_i_axis.size();
    os << nr;
    for (size_t i = 0; i < nr; ++i) {
        format_sig12(buf, sizeof buf, grid.alpha_r_axis[i]);
        os << ' ' << buf;
    }
    os << '\n';
    for (size_t j = 0; j < ni; ++j) {
        format_sig12(buf, sizeof buf, grid.alpha_i_axis[j]);
        os << buf;
        for (size_t i = 0; i < nr; ++i) {
            format_sig12(buf, sizeof buf, grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            os << ' ' << buf;
        }
        os << '\n';
    }
}

} // namespace optomech
