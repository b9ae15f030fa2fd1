#pragma once

#include <cstddef>
#include <vector>

#include "mmlab/measures.hpp"
#include "mmlab/mmm_space.hpp"
#include "mmlab/rng.hpp"

namespace mmlab {

/// Upper limit on support points for equivalent().
inline constexpr std::size_t kMaxEquivalenceSupport = 12;

/// Measure- and mark-preserving isometry between the nu-supports, decided by
/// backtracking. Throws capability_error beyond kMaxEquivalenceSupport.
bool equivalent(const MmmSpace& x1, const MmmSpace& x2, double slack = 1e-9);

struct MarkedDistanceMatrixSample {
  std::size_t order = 0;
  std::vector<double> dist;   // r(x_k, x_l) for k < l, row by row
  std::vector<double> marks;  // u_1..u_m

  bool operator==(const MarkedDistanceMatrixSample&) const = default;
  bool operator<(const MarkedDistanceMatrixSample& o) const {
    return dist != o.dist ? dist < o.dist : marks < o.marks;
  }
};

/// Draws m atoms i.i.d. from mu / ||mu||.
MarkedDistanceMatrixSample sample_distance_matrix(const MmmSpace& x, std::size_t m, Rng& rng);

/// The metric space of x1 and x2 glued by a cross-distance matrix, and the
/// two measures pushed onto its atoms (points x marks, metric r + d).
struct CommonEmbedding {
  std::vector<double> cross;  // n1 x n2, row-major, metric-closed
  std::shared_ptr<const FiniteSpace> atoms_space;
  FiniteMeasure mu1;
  FiniteMeasure mu2;
};

/// Builds the embedding for a cross-distance matrix rho satisfying
/// rho(x,y) + rho(x',y') >= |r1(x,x') - r2(y,y')|. Throws std::domain_error
/// if the glued space does not embed x1 and x2 isometrically.
CommonEmbedding embed(const MmmSpace& x1, const MmmSpace& x2, const std::vector<double>& cross);

struct MgpBound {
  double bound = 0.0;          // certified upper bound on d_mGP
  std::vector<double> cross;   // witness cross distances, n1 x n2
  std::size_t sweeps = 0;
};

/// Upper bound on the marked Gromov-Prohorov distance by local search over
/// cross-distance matrices. `budget` counts coordinate-descent sweeps.
MgpBound mgp_upper(const MmmSpace& x1, const MmmSpace& x2, int budget, Rng& rng, double tol = 1e-9);

/// Prohorov distance between the empirical order-m marked distance matrix
/// laws of x1 and x2 (entries and marks compared in max-metric, each capped
/// at 1). A convergence diagnostic, not a bound on d_mGP.
double mgw_lower_diagnostic(const MmmSpace& x1, const MmmSpace& x2, std::size_t m, std::size_t n_samples,
                            Rng& rng);

/// Points (x,u) for atoms in use, r_n = r + min(e^{-n}, d), kappa(x,u) = u.
FmmSpace dense_fmm_approx(const MmmSpace& x, int n);

}  // namespace mmlab
