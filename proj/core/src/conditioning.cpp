#include "optomech/conditioning.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

void check_partition_shapes(const PartitionedCov& p)
{
    if (p.A.rows() != p.A.cols() || p.B.rows() != p.B.cols())
        throw DomainError("partition blocks A and B must be square");
    if (p.C.rows() != p.A.rows() || p.C.cols() != p.B.rows())
        throw DomainError("cross block C has inconsistent dimensions");
    if (p.A.rows() % 2 != 0 || p.B.rows() % 2 != 0 || p.A.rows() == 0 || p.B.rows() == 0)
        throw DomainError("partition blocks must hold whole modes");
}

// Assembles [[A, C], [C^T, B]] and runs it through the CovMat checks, which
// is the precondition every measurement update relies on.
void require_physical(const PartitionedCov& p)
{
    check_partition_shapes(p);
    const auto na = p.A.rows(), nb = p.B.rows();
    Mat V(na + nb, na + nb);
    V.topLeftCorner(na, na) = p.A;
    V.topRightCorner(na, nb) = p.C;
    V.bottomLeftCorner(nb, na) = p.C.transpose();
    V.bottomRightCorner(nb, nb) = p.B;
    CovMat checked(std::move(V));
    (void)checked;
}

// Per-mode phase-space rotation sending the x quadrature onto
// cos(angle) q + sin(angle) p under V -> S^T V S.
Mat quadrature_rotation(const std::vector<double>& angles)
{
    const auto n = static_cast<Eigen::Index>(angles.size());
    Mat S = Mat::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double c = std::cos(angles[static_cast<size_t>(k)]);
        const double s = std::sin(angles[static_cast<size_t>(k)]);
        S(2 * k, 2 * k) = c;
        S(2 * k, 2 * k + 1) = -s;
        S(2 * k + 1, 2 * k) = s;
        S(2 * k + 1, 2 * k + 1) = c;
    }
    return S;
}

} // namespace

PartitionedCov partition(const CovMat& state, const std::vector<int>& kept,
                         const std::vector<int>& measured)
{
    std::set<int> seen;
    for (const auto* group : {&kept, &measured})
        for (int m : *group) {
            if (m < 0 || m >= state.modes())
                throw IndexOutOfRange("partition mode index out of range");
            if (!seen.insert(m).second)
                throw DomainError("partition index sets must be disjoint");
        }
    if (kept.empty() || measured.empty())
        throw DomainError("partition needs at least one kept and one measured mode");

    const Mat& V = state.matrix();
    const auto na = static_cast<Eigen::Index>(2 * kept.size());
    const auto nb = static_cast<Eigen::Index>(2 * measured.size());
    PartitionedCov p{Mat(na, na), Mat(nb, nb), Mat(na, nb)};
    for (size_t a = 0; a < kept.size(); ++a) {
        for (size_t b = 0; b < kept.size(); ++b)
            p.A.block(2 * static_cast<Eigen::Index>(a), 2 * static_cast<Eigen::Index>(b), 2, 2) =
                V.block(2 * kept[a], 2 * kept[b], 2, 2);
        for (size_t b = 0; b < measured.size(); ++b)
            p.C.block(2 * static_cast<Eigen::Index>(a), 2 * static_cast<Eigen::Index>(b), 2, 2) =
                V.block(2 * kept[a], 2 * measured[b], 2, 2);
    }
    for (size_t a = 0; a < measured.size(); ++a)
        for (size_t b = 0; b < measured.size(); ++b)
            p.B.block(2 * static_cast<Eigen::Index>(a), 2 * static_cast<Eigen::Index>(b), 2, 2) =
                V.block(2 * measured[a], 2 * measured[b], 2, 2);
    return p;
}

Mat homodyne_update(const PartitionedCov& p)
{
    require_physical(p);
    const auto nb = p.B.rows();
    Mat pi = Mat::Zero(nb, nb);
    for (Eigen::Index k = 0; k < nb; k += 2)
        pi(k, k) = 1.0;
    const Mat reduced = pi * p.B * pi;
    Mat Ap = p.A - p.C * pseudo_inverse(reduced) * p.C.transpose();
    return 0.5 * (Ap + Ap.transpose());
}

Mat homodyne_update(const PartitionedCov& p, const std::vector<double>& angles)
{
    check_partition_shapes(p);
    if (static_cast<Eigen::Index>(2 * angles.size()) != p.B.rows())
        throw DomainError("one homodyne angle per measured mode required");
    const Mat S = quadrature_rotation(angles);
    return homodyne_update(PartitionedCov{p.A, S.transpose() * p.B * S, p.C * S});
}

Mat vacuum_update(const PartitionedCov& p, VacuumOffset offset)
{
    require_physical(p);
    const double o = offset == VacuumOffset::half ? 0.5 : 1.0;
    const Mat shifted = p.B + o * Mat::Identity(p.B.rows(), p.B.cols());
    Eigen::LLT<Mat> llt(shifted);
    if (llt.info() != Eigen::Success)
        throw SingularCovariance("offset measured block is not positive definite");
    Mat Ap = p.A - p.C * llt.solve(p.C.transpose());
    return 0.5 * (Ap + Ap.transpose());
}

CovMat attach_vacuum_ancilla(const CovMat& state)
{
    const auto n = state.matrix().rows();
    Mat V = Mat::Zero(n + 2, n + 2);
    V.topLeftCorner(n, n) = state.matrix();
    V.bottomRightCorner(2, 2) = 0.5 * Mat::Identity(2, 2);
    return CovMat(std::move(V));
}

CovMat beam_splitter(const CovMat& state, int mode_i, int mode_j, double theta)
{
    const int n = state.modes();
    if (mode_i < 0 || mode_i >= n || mode_j < 0 || mode_j >= n)
        throw IndexOutOfRange("beam_splitter mode index out of range");
    if (mode_i == mode_j)
        throw DomainError("beam_splitter needs two distinct modes");

    const double c = std::cos(theta), s = std::sin(theta);
    Mat S = Mat::Identity(2 * n, 2 * n);
    S.block(2 * mode_i, 2 * mode_i, 2, 2) = c * Mat::Identity(2, 2);
    S.block(2 * mode_j, 2 * mode_j, 2, 2) = c * Mat::Identity(2, 2);
    S.block(2 * mode_i, 2 * mode_j, 2, 2) = s * Mat::Identity(2, 2);
    S.block(2 * mode_j, 2 * mode_i, 2, 2) = -s * Mat::Identity(2, 2);
    return CovMat(S.transpose() * state.matrix() * S);
}

ConditioningChoice parse_conditioning(const std::string& text)
{
    ConditioningChoice choice;
    if (text == "none") {
        choice.strategy = Strategy::none;
    } else if (text == "homodyne") {
        choice.strategy = Strategy::homodyne_cavity;
    } else if (text == "vacuum") {
        choice.strategy = Strategy::vacuum_cavity;
    } else if (text.rfind("ancilla:", 0) == 0) {
        choice.strategy = Strategy::ancilla_vacuum;
        const std::string arg = text.substr(8);
        size_t used = 0;
        double over_pi = 0.0;
        try {
            over_pi = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse ancilla angle in '" + text + "'");
        }
        if (used != arg.size())
            throw ConfigError("trailing characters after ancilla angle in '" + text + "'");
        choice.theta = over_pi * std::numbers::pi;
    } else {
        throw ConfigError("unknown conditioning strategy '" + text
                          + "' (expected none|homodyne|vacuum|ancilla:<theta_over_pi>)");
    }
    return choice;
}

Mat conditioned_mirror_block(const PhysicalParams& params, const ConditioningChoice& choice)
{
    const CovMat V(steady_state(params)); // modes: 0 mirror, 1 cavity

    switch (choice.strategy) {
    case Strategy::none:
        return V.block({0}).matrix();
    case Strategy::homodyne_cavity:
        return homodyne_update(partition(V, {0}, {1}));
    case Strategy::vacuum_cavity:
        return vacuum_update(partition(V, {0}, {1}), choice.offset);
    case Strategy::ancilla_vacuum: {
        const CovMat mixed = beam_splitter(attach_vacuum_ancilla(V), 1, 2, choice.theta);
        const Mat kept = vacuum_update(partition(mixed, {0, 1}, {2}), choice.offset);
        return CovMat(kept).block({0}).matrix();
    }
    }
    throw DomainError("unhandled conditioning strategy");
}

SqueezedThermalFit conditioned_mirror(const PhysicalParams& params,
                                      const ConditioningChoice& choice)
{
    return fit_squeezed_thermal(CovMat(conditioned_mirror_block(params, choice)));
}

TripartiteNegativities tripartite_scan(const PhysicalParams& params, double theta)
{
    const CovMat mixed =
        beam_splitter(attach_vacuum_ancilla(CovMat(steady_state(params))), 1, 2, theta);
    return TripartiteNegativities{
        log_negativity(mixed.block({0, 1})),
        log_negativity(mixed.block({0, 2})),
        log_negativity(mixed.block({1, 2})),
    };
}

} // namespace optomech
