#include "optomech/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "optomech/errors.hpp"

namespace optomech {

std::vector<double> spectrum_real_parts(const Mat& K)
{
    Eigen::EigenSolver<Mat> es(K, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw ConvergenceFailure("eigen-solver did not converge on a "
                                 + std::to_string(K.rows()) + "x" + std::to_string(K.cols()) + " matrix");
    }
    std::vector<double> re(K.rows());
    for (Eigen::Index i = 0; i < K.rows(); ++i)
        re[static_cast<size_t>(i)] = es.eigenvalues()[i].real();
    std::sort(re.begin(), re.end(), std::greater<double>());
    return re;
}

double spectral_abscissa(const Mat& K)
{
    return spectrum_real_parts(K).front();
}

Mat solve_lyapunov(const Mat& K, const Mat& D)
{
    const Eigen::Index n = K.rows();

    if (spectral_abscissa(K) >= 0.0) {
        std::ostringstream msg;
        msg << "drift matrix has spectral abscissa " << spectral_abscissa(K)
            << " >= 0; no stationary covariance exists";
        throw UnstableDrift(msg.str());
    }

    // Scale by the largest drift entry so the vectorized system is O(1)
    // regardless of the (rad/s) magnitudes coming from the physics.
    const double scale = std::max(K.cwiseAbs().maxCoeff(), 1e-300);
    const Mat Ks = K / scale;
    const Mat Ds = D / scale;

    // A = I (x) Ks + Ks (x) I acting on column-stacked vec(V).
    Mat A = Mat::Zero(n * n, n * n);
    const Mat I = Mat::Identity(n, n);
    for (Eigen::Index bi = 0; bi < n; ++bi) {
        A.block(bi * n, bi * n, n, n) = Ks;
        for (Eigen::Index bj = 0; bj < n; ++bj)
            A.block(bi * n, bj * n, n, n) += Ks(bi, bj) * I;
    }

    Vec rhs(n * n);
    for (Eigen::Index j = 0; j < n; ++j)
        rhs.segment(j * n, n) = -Ds.col(j);

    Eigen::FullPivLU<Mat> lu(A);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible())
        throw SingularSystem("vectorized Lyapunov system is rank-deficient");

    const Vec v = lu.solve(rhs);
    Mat V(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        V.col(j) = v.segment(j * n, n);

    return 0.5 * (V + V.transpose());
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order embedded weights (include the FSAL stage).
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                 e6 = 187.0 / 2100, e7 = 1.0 / 40;

} // namespace

Mat evolve_covariance(const Mat& K, const Mat& D, const Mat& V0, double t)
{
    if (t < 0.0)
        throw DomainError("evolve_covariance requires t >= 0");
    if (t == 0.0)
        return V0;

    const auto f = [&](const Mat& V) -> Mat { return K * V + V * K.transpose() + D; };

    const double tol = 1e-10;
    const double rate = std::max(K.cwiseAbs().maxCoeff(), 1e-300);

    Mat V = V0;
    double time = 0.0;
    double h = std::min(t, 0.1 / rate);
    Mat k1 = f(V);

    while (time < t) {
        if (time + h > t)
            h = t - time;

        const Mat k2 = f(V + h * (a21 * k1));
        const Mat k3 = f(V + h * (a31 * k1 + a32 * k2));
        const Mat k4 = f(V + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Mat k5 = f(V + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Mat k6 = f(V + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Mat V5 = V + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Mat k7 = f(V5); // FSAL
        const Mat V4 = V + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale_ref = std::max(1.0, std::max(V.cwiseAbs().maxCoeff(), V5.cwiseAbs().maxCoeff()));
        const double err = (V5 - V4).cwiseAbs().maxCoeff() / scale_ref;

        if (err <= tol) {
            time += h;
            V = V5;
            k1 = k7;
        }

        const double shrink = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(shrink, 0.2, 5.0);

        if (h < 1e-14 * std::max(t, 1.0 / rate))
            throw StepFailure("step size underflow in covariance integration at t=" + std::to_string(time));
    }
    return V;
}

Mat pseudo_inverse(const Mat& B)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (B + B.transpose()));
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("symmetric eigen-solver failed in pseudo_inverse");

    const double cutoff = 1e-10 * std::max(B.cwiseAbs().maxCoeff(), 0.0);
    Vec inv = es.eigenvalues();
    for (Eigen::Index i = 0; i < inv.size(); ++i)
        inv[i] = (std::abs(inv[i]) > cutoff) ? 1.0 / inv[i] : 0.0;

    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace optomech
