#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mmlab/mmm_core.hpp"
#include "mmlab/modulus.hpp"

namespace mmlab {

/// Largest connected piece of the conflict graph that in_M solves exactly.
inline constexpr std::size_t kMaxExactComponent = 40;

/// Sum of (1 ^ d(u,v)) xi(u) xi(v) over mark pairs; xi given as (mark, mass).
double beta_mark(const std::vector<std::pair<double, double>>& xi, const MarkSpace& marks);

/// Integral of beta_{K_x} against nu.
double beta(const MmmSpace& x);

struct AtomPair {
  std::size_t a = 0, b = 0;  // atom indices
  double r = 0.0;            // point distance
  double d = 0.0;            // mark distance
};

struct MembershipReport {
  bool verdict = false;
  /// Atoms kept by mu' (in_M); every support atom for in_H / in_D.
  std::vector<std::size_t> retained;
  std::optional<AtomPair> violation;
  double retained_mass = 0.0;
  /// Set when a greedy fallback was used; a false verdict may then be wrong.
  bool approximate = false;
};

/// The sub-space (X, r, mu') described by report.retained.
MmmSpace witness_space(const MmmSpace& x, const MembershipReport& report);

MembershipReport in_H(const MmmSpace& x, const Modulus& h);
MembershipReport in_D(const MmmSpace& x, double delta, double eps);

/// Exact per conflict-graph component up to kMaxExactComponent atoms. Larger
/// components throw capability_error unless allow_approx is set.
MembershipReport in_M(const MmmSpace& x, double delta, double eps, bool allow_approx = false);

bool in_Mh(const MmmSpace& x, const Modulus& h, const std::vector<double>& delta_grid, bool allow_approx = false);

/// Largest grid delta admitting a grid eps with x in M^{2 delta, eps} and
/// (eps + 2 delta)(2 + |mu| + delta) < 1/m; 0 if there is none.
double rho_lower_bound(const MmmSpace& x, int m, const std::vector<double>& delta_grid,
                       const std::vector<double>& eps_grid, bool allow_approx = false);

struct FgpOptions {
  std::vector<double> delta_grid;
  std::vector<double> eps_grid;
  int budget = 20;
  bool allow_approx = false;
};

/// mgp_upper(x, y) + max_{m <= m_max} min(2^-m, |1/rho_m(x) - 1/rho_m(y)|)
/// with rho_m replaced by rho_lower_bound.
double fgp_surrogate(const MmmSpace& x, const MmmSpace& y, int m_max, const FgpOptions& opts, Rng& rng);

/// 2^-1, ..., 2^-k.
std::vector<double> dyadic_grid(int k);

namespace detail {
/// in_M without the eps > 0 precondition, for moduli with h(delta) = 0.
MembershipReport in_M_unchecked(const MmmSpace& x, double delta, double eps, bool allow_approx);
}  // namespace detail

}  // namespace mmlab
