#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "optomech/config.hpp"
#include "optomech/errors.hpp"
#include "optomech/model.hpp"
#include "optomech/state.hpp"

using namespace optomech;

namespace {

double uniform(std::mt19937_64& gen, double lo, double hi)
{
    return lo + (hi - lo) * ((gen() >> 11) * 0x1.0p-53);
}

Mat squeezed_thermal(double n_bar, double s, double phi)
{
    const Mat S = symplectic_squeeze(s, phi);
    return S * ((n_bar + 0.5) * Mat::Identity(2, 2)) * S;
}

// two-mode squeezed vacuum with parameter r
Mat tmsv(double r)
{
    Mat V = 0.5 * std::cosh(2.0 * r) * Mat::Identity(4, 4);
    const double c = 0.5 * std::sinh(2.0 * r);
    V(0, 2) = V(2, 0) = c;
    V(1, 3) = V(3, 1) = -c;
    return V;
}

// Entanglement of a two-mode state from the symplectic invariants alone:
// nu-^2 = (Sigma - sqrt(Sigma^2 - 4 det V)) / 2 with
// Sigma = det A + det B - 2 det C. Shares no code with the library path,
// which diagonalizes the partially transposed matrix instead.
double logneg_from_invariants(const Mat& V)
{
    const double detA = V.block(0, 0, 2, 2).determinant();
    const double detB = V.block(2, 2, 2, 2).determinant();
    const double detC = V.block(0, 2, 2, 2).determinant();
    const double sigma = detA + detB - 2.0 * detC;
    const double nu2 = 0.5 * (sigma - std::sqrt(sigma * sigma - 4.0 * V.determinant()));
    return std::max(0.0, -std::log(2.0 * std::sqrt(nu2)));
}

Mat rotation(double angle)
{
    Mat R(2, 2);
    R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return R;
}

} // namespace

TEST_CASE("covariance construction enforces the physics")
{
    CHECK_NOTHROW(CovMat::vacuum(3));
    CHECK(CovMat::vacuum(2).modes() == 2);

    // below the uncertainty bound
    CHECK_THROWS_AS(CovMat(0.4 * Mat::Identity(2, 2)), DomainError);

    Mat lopsided = 0.5 * Mat::Identity(2, 2);
    lopsided(0, 1) = 0.3; // asymmetric
    CHECK_THROWS_AS(CovMat{lopsided}, DomainError);

    Mat odd = 0.5 * Mat::Identity(3, 3);
    CHECK_THROWS_AS(CovMat{odd}, DomainError);

    const auto nu = CovMat(squeezed_thermal(2.0, 0.7, 1.1)).symplectic_eigenvalues();
    REQUIRE(nu.size() == 1);
    CHECK(nu[0] == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("block extraction")
{
    const CovMat V(tmsv(0.8));
    CHECK(V.block({0}).matrix()(0, 0) == doctest::Approx(0.5 * std::cosh(1.6)));
    CHECK(V.block({1}).matrix()(1, 1) == doctest::Approx(0.5 * std::cosh(1.6)));
    CHECK_THROWS_AS(V.block({2}), IndexOutOfRange);
    CHECK_THROWS_AS(V.block({-1}), IndexOutOfRange);

    // composition: sub-blocking the full block is the direct block
    const Mat direct = V.block({1}).matrix();
    const Mat composed = V.block({0, 1}).block({1}).matrix();
    CHECK((direct - composed).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("squeeze matrix special values")
{
    CHECK((symplectic_squeeze(0.0, 1.23) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

    const double s = 0.9;
    const Mat A = symplectic_squeeze(s, std::numbers::pi);
    CHECK(A(0, 0) == doctest::Approx(std::exp(s)));
    CHECK(A(1, 1) == doctest::Approx(std::exp(-s)));
    CHECK(std::abs(A(0, 1)) < 1e-15);

    std::mt19937_64 gen(99);
    for (int i = 0; i < 50; ++i) {
        const Mat S = symplectic_squeeze(uniform(gen, 0.0, 3.0),
                                         uniform(gen, -std::numbers::pi, std::numbers::pi));
        CHECK(S.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(symplectic_squeeze(-0.1, 0.0), DomainError);
}

TEST_CASE("squeezed-thermal fit round trip")
{
    std::mt19937_64 gen(2024);
    for (int i = 0; i < 200; ++i) {
        const double n = uniform(gen, 0.0, 1000.0);
        const double s = uniform(gen, 0.0, 3.0);
        const double phi = uniform(gen, -std::numbers::pi + 1e-3, std::numbers::pi);
        const Mat J = squeezed_thermal(n, s, phi);
        const auto fit = fit_squeezed_thermal(CovMat(J));

        const Mat back = squeezed_thermal(fit.n_bar, fit.s, fit.phi);
        const double scale = J.cwiseAbs().maxCoeff();
        CHECK((back - J).cwiseAbs().maxCoeff() < 1e-9 * scale);
        CHECK(fit.n_bar == doctest::Approx(n).epsilon(1e-9));
        CHECK(fit.s == doctest::Approx(s).epsilon(1e-7));
        if (s > 1e-6)
            CHECK(fit.phi == doctest::Approx(phi).epsilon(1e-6));
    }
}

TEST_CASE("fit conventions at the degenerate points")
{
    // isotropic thermal: no squeezing, angle fixed to zero
    auto fit = fit_squeezed_thermal(CovMat(3.5 * Mat::Identity(2, 2)));
    CHECK(fit.n_bar == doctest::Approx(3.0));
    CHECK(fit.s == 0.0);
    CHECK(fit.phi == 0.0);

    // antisqueezed vacuum: diagonal with the wide axis first
    const double s = 0.6;
    Mat J = Mat::Zero(2, 2);
    J(0, 0) = 0.5 * std::exp(2.0 * s);
    J(1, 1) = 0.5 * std::exp(-2.0 * s);
    fit = fit_squeezed_thermal(CovMat(J));
    CHECK(fit.n_bar == doctest::Approx(0.0));
    CHECK(fit.s == doctest::Approx(s));
    CHECK(fit.phi == doctest::Approx(std::numbers::pi));
}

TEST_CASE("wigner values and normalization")
{
    const CovMat vac = CovMat::vacuum(1);
    CHECK(wigner_value(vac, 0.0, 0.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));

    // origin value is the inverse normalization for any state
    const Mat J = squeezed_thermal(1.2, 0.5, 0.9);
    CHECK(wigner_value(CovMat(J), 0.0, 0.0)
          == doctest::Approx(1.0 / (std::numbers::pi * std::sqrt(J.determinant()))));

    std::vector<double> axis;
    for (int i = 0; i < 161; ++i)
        axis.push_back(-4.0 + 8.0 * i / 160.0);
    const WignerGrid grid = wigner_grid(vac, axis, axis);
    CHECK(grid.integral() == doctest::Approx(1.0).epsilon(1e-3));
    for (Eigen::Index i = 0; i < grid.values.rows(); ++i)
        for (Eigen::Index j = 0; j < grid.values.cols(); ++j)
            CHECK(grid.values(i, j) > 0.0);
}

TEST_CASE("wigner grid second moments recover the covariance")
{
    const Mat J = squeezed_thermal(0.8, 0.6, 2.1);
    const WignerGrid g = wigner_grid_auto(CovMat(J), 241);

    // quadrature moments by direct trapezoid integration; f = sqrt(2) alpha
    double m11 = 0.0, m22 = 0.0, m12 = 0.0;
    WignerGrid weighted = g;
    auto integrate_weighted = [&](auto f) {
        for (size_t i = 0; i < g.alpha_r_axis.size(); ++i)
            for (size_t j = 0; j < g.alpha_i_axis.size(); ++j)
                weighted.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    f(g.alpha_r_axis[i], g.alpha_i_axis[j])
                    * g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        return weighted.integral();
    };
    m11 = integrate_weighted([](double r, double) { return 2.0 * r * r; });
    m22 = integrate_weighted([](double, double im) { return 2.0 * im * im; });
    m12 = integrate_weighted([](double r, double im) { return 2.0 * r * im; });

    CHECK(m11 == doctest::Approx(J(0, 0)).epsilon(1e-3));
    CHECK(m22 == doctest::Approx(J(1, 1)).epsilon(1e-3));
    CHECK(m12 == doctest::Approx(J(0, 1)).epsilon(2e-3));
    CHECK(g.integral() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("wigner grid rejects bad axes")
{
    const CovMat vac = CovMat::vacuum(1);
    CHECK_THROWS_AS(wigner_grid(vac, {0.0}, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(wigner_grid(vac, {0.0, 1.0, 0.5}, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(wigner_grid_auto(vac, 1), DomainError);
}

TEST_CASE("logarithmic negativity against the invariant formula")
{
    CHECK(log_negativity(CovMat::vacuum(2)) == 0.0);

    for (double r : {0.1, 0.5, 1.0, 1.7}) {
        const Mat V = tmsv(r);
        CHECK(log_negativity(CovMat(V)) == doctest::Approx(2.0 * r).epsilon(1e-10));
        CHECK(log_negativity(CovMat(V)) == doctest::Approx(logneg_from_invariants(V)).epsilon(1e-10));
    }

    // steady two-mode state of the reference model
    const Mat V = steady_state(SimConfig{}.params());
    CHECK(log_negativity(CovMat(V)) == doctest::Approx(logneg_from_invariants(V)).epsilon(1e-9));

    CHECK_THROWS_AS(log_negativity(CovMat::vacuum(1)), DomainError);
    CHECK_THROWS_AS(log_negativity(CovMat::vacuum(3)), DomainError);
}

TEST_CASE("logarithmic negativity is invariant under local symplectics")
{
    std::mt19937_64 gen(31337);
    const Mat V = tmsv(0.9);
    const double reference = log_negativity(CovMat(V));
    for (int i = 0; i < 20; ++i) {
        Mat S = Mat::Zero(4, 4);
        S.block(0, 0, 2, 2) = rotation(uniform(gen, 0.0, 2.0 * std::numbers::pi))
                              * symplectic_squeeze(uniform(gen, 0.0, 1.5), uniform(gen, 0.0, 3.0));
        S.block(2, 2, 2, 2) = rotation(uniform(gen, 0.0, 2.0 * std::numbers::pi))
                              * symplectic_squeeze(uniform(gen, 0.0, 1.5), uniform(gen, 0.0, 3.0));
        const Mat W = S.transpose() * V * S;
        CHECK(log_negativity(CovMat(W)) == doctest::Approx(reference).epsilon(1e-9));
    }
}

TEST_CASE("purity")
{
    CHECK(purity(CovMat::vacuum(1)) == doctest::Approx(1.0));
    CHECK(purity(CovMat::vacuum(3)) == doctest::Approx(1.0));
    CHECK(purity(CovMat(2.5 * Mat::Identity(2, 2))) == doctest::Approx(1.0 / 5.0));

    std::mt19937_64 gen(555);
    for (int i = 0; i < 20; ++i) {
        const Mat J = squeezed_thermal(uniform(gen, 0.0, 10.0), uniform(gen, 0.0, 2.0),
                                       uniform(gen, -3.0, 3.0));
        CHECK(purity(CovMat(J)) <= 1.0 + 1e-9);
    }
}

TEST_CASE("steady mirror block has no cross correlation")
{
    for (double ratio : {0.2, 0.87, 1.4}) {
        PhysicalParams p = SimConfig{}.params();
        p.detuning = ratio * p.omega_m;
        const Mat M = CovMat(steady_state(p)).block({0}).matrix();
        CHECK(std::abs(M(0, 1)) <= 1e-8 * M.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("wigner exports")
{
    const WignerGrid g = wigner_grid_auto(CovMat::vacuum(1), 5);
    std::ostringstream csv;
    write_wigner_csv(g, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("# alpha_r,alpha_i,w\n", 0) == 0);
    // header plus one line per grid node
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 25);

    std::ostringstream mat;
    write_wigner_matrix(g, mat);
    const std::string table = mat.str();
    CHECK(table.rfind("5 ", 0) == 0); // leading column count
    CHECK(std::count(table.begin(), table.end(), '\n') == 6);
}
