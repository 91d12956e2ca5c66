#pragma once

#include <string>
#include <vector>

#include "optomech/linalg.hpp"
#include "optomech/model.hpp"
#include "optomech/state.hpp"

namespace optomech {

// Kept/measured split of a multimode covariance matrix, assembled as
// [[A, C], [C^T, B]] with A the kept block and B the measured block.
struct PartitionedCov {
    Mat A;
    Mat B;
    Mat C;
};

// Extracts the (kept, measured) partition. The two index sets must be
// disjoint; modes listed in neither set are discarded (traced out).
PartitionedCov partition(const CovMat& state, const std::vector<int>& kept,
                         const std::vector<int>& measured);

// Conditional covariance of the kept modes after an ideal x-quadrature
// homodyne reading of every measured mode:
//   A' = A - C (pi B pi)^+ C^T,   pi = diag(1, 0) per measured mode,
// with ^+ the pseudo-inverse absorbing the rank deficiency pi introduces.
Mat homodyne_update(const PartitionedCov& p);

// Same measurement on the rotated quadrature cos(angle) q + sin(angle) p of
// each measured mode. All angles zero reduces to the plain x homodyne.
Mat homodyne_update(const PartitionedCov& p, const std::vector<double>& angles);

// Offset used by the vacuum projection below. `half` matches the
// vacuum-variance-1/2 convention used throughout this library; `one` is the
// integer-offset variant kept for comparison runs.
enum class VacuumOffset { half, one };

// Conditional covariance after projecting every measured mode onto vacuum:
//   A' = A - C (B + offset I)^{-1} C^T.
Mat vacuum_update(const PartitionedCov& p, VacuumOffset offset = VacuumOffset::half);

// Direct sum with one vacuum mode appended last.
CovMat attach_vacuum_ancilla(const CovMat& state);

// Beam splitter mixing modes i and j by theta: V -> S^T V S, with S carrying
// cos(theta) I on the two diagonal 2x2 blocks and (+sin, -sin) I off the
// diagonal. S is symplectic; theta = pi/2 swaps the two modes.
CovMat beam_splitter(const CovMat& state, int mode_i, int mode_j, double theta);

enum class Strategy { none, homodyne_cavity, vacuum_cavity, ancilla_vacuum };

struct ConditioningChoice {
    Strategy strategy = Strategy::none;
    double theta = 0.0; // cavity-ancilla mixing angle, ancilla_vacuum only
    VacuumOffset offset = VacuumOffset::half;
};

// Parses a config/CLI value: none | homodyne | vacuum | ancilla:<theta_over_pi>.
ConditioningChoice parse_conditioning(const std::string& text);

// Steady-state mirror covariance after the selected measurement chain:
//   none             the unconditioned mirror block
//   homodyne_cavity  x homodyne of the cavity field
//   vacuum_cavity    vacuum projection of the cavity field
//   ancilla_vacuum   mix the cavity with a vacuum ancilla by theta, then
//                    vacuum-project the ancilla
Mat conditioned_mirror_block(const PhysicalParams& params, const ConditioningChoice& choice);

// Squeezed-thermal parameters of the conditioned mirror state.
SqueezedThermalFit conditioned_mirror(const PhysicalParams& params,
                                      const ConditioningChoice& choice);

// Pairwise entanglement within the three-mode state obtained by splitting the
// steady cavity field on a vacuum ancilla at angle theta.
struct TripartiteNegativities {
    double mirror_cavity;
    double mirror_ancilla;
    double cavity_ancilla;
};

TripartiteNegativities tripartite_scan(const PhysicalParams& params, double theta);

} // namespace optomech
