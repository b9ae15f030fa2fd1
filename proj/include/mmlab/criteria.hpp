#pragma once

#include <cstddef>
#include <vector>

#include "mmlab/mark_diagnostics.hpp"

namespace mmlab {

// Finite-prefix evidence for the "infinitely many n" limit criteria. Every
// verdict here is a heuristic reading of a finite table, never a proof.

struct CriterionRow {
  std::size_t n = 0;
  double delta = 0.0;
  bool verdict = false;
  double retained_mass = 0.0;
  std::size_t witness_size = 0;
  double value = 0.0;  // g_n(delta) for diam_criterion, unused otherwise
};

struct CriterionReport {
  std::vector<CriterionRow> rows;
  /// Per grid delta: share of passing rows among the last half of the sequence
  /// (limit criteria) or the liminf proxy of g (diam criterion).
  std::vector<double> per_delta;
  bool supported = false;
};

/// Indices making up the "last half" of a sequence of length n (at least one).
std::size_t tail_start(std::size_t n);

/// Checks in_M(seq[n], delta, h(delta)) for each n and delta. Supported iff
/// for each delta the share of passes over the last half is >= threshold.
CriterionReport limit_criterion_theorem(const std::vector<MmmSpace>& seq, const Modulus& h,
                                        const std::vector<double>& delta_grid, double threshold = 0.5,
                                        bool allow_approx = false);

/// y_sets[n][j] is the point set Y for seq[n] and delta_grid[j]. A row passes
/// when nu_n(X \ Y) <= h(delta) and every support pair in Y closer than delta
/// has mark distance <= h(delta).
CriterionReport limit_criterion_sets(const std::vector<FmmSpace>& seq,
                                     const std::vector<std::vector<std::vector<std::size_t>>>& y_sets,
                                     const Modulus& h, const std::vector<double>& delta_grid,
                                     double threshold = 0.5);

/// g_n(delta) = nu_n(X \ Z) + sum_{x in Z} nu_n(x) (1 ^ diam kappa_n(B_delta(x) cap Z)),
/// B_delta open. per_delta holds the min over the last half of n (a liminf
/// proxy); supported iff that proxy at the finest grid delta is <= zero_tol.
CriterionReport diam_criterion(const std::vector<FmmSpace>& seq,
                               const std::vector<std::vector<std::vector<std::size_t>>>& z_sets,
                               const std::vector<double>& delta_grid, double zero_tol = 0.05);

/// The inner expression of diam_criterion for one space and one Z.
double diam_expression(const FmmSpace& x, const std::vector<std::size_t>& z, double delta);

}  // namespace mmlab
