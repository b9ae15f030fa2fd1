#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "mmlab/finite_space.hpp"

namespace mmlab {

/// A finite atomic measure on a FiniteSpace: one nonnegative mass per point.
class FiniteMeasure {
 public:
  FiniteMeasure(std::shared_ptr<const FiniteSpace> space, std::vector<double> mass);

  static FiniteMeasure zero(std::shared_ptr<const FiniteSpace> space);

  const FiniteSpace& space() const { return *space_; }
  const std::shared_ptr<const FiniteSpace>& space_ptr() const { return space_; }
  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  const std::vector<double>& masses() const { return mass_; }
  double total() const;
  std::vector<std::size_t> support() const;

  bool same_space(const FiniteMeasure& other) const;
  /// Atomwise mu <= other, up to slack.
  bool dominated_by(const FiniteMeasure& other, double slack = 1e-12) const;

 private:
  std::shared_ptr<const FiniteSpace> space_;
  std::vector<double> mass_;
};

/// Nonnegative matrix on space x space; rows index the first measure.
class Coupling {
 public:
  explicit Coupling(std::size_t n) : n_(n), xi_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return xi_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) { return xi_[i * n_ + j]; }
  std::vector<double> first_marginal() const;
  std::vector<double> second_marginal() const;
  double total() const;

 private:
  std::size_t n_;
  std::vector<double> xi_;
};

double variational_distance(const FiniteMeasure& mu, const FiniteMeasure& nu);

/// mu restricted to the points flagged in `keep` (same length as the space).
FiniteMeasure restrict(const FiniteMeasure& mu, const std::vector<bool>& keep);

struct Feasibility {
  bool feasible = false;
  double flow = 0.0;
  std::optional<Coupling> witness;
};

/// Edge-admission slack for the open neighbourhood dist < eps.
inline constexpr double kNeighbourhoodSlack = 1e-12;

/// Decides whether a partial coupling xi with xi <= mu_i, mass deficit <= eps
/// and support on {dist < eps} exists, by max-flow on the support atoms.
Feasibility prohorov_feasible(const FiniteMeasure& mu1, const FiniteMeasure& mu2, double eps);

/// Checks a witness against the partial-coupling conditions at level eps.
bool is_valid_witness(const Coupling& xi, const FiniteMeasure& mu1, const FiniteMeasure& mu2,
                      double eps, double slack = 1e-12);

struct ProhorovResult {
  double distance = 0.0;
  Coupling witness;  // feasible at distance + tol
};

/// Returns v with: feasible at v + tol, infeasible at v - tol (when v - tol > 0).
ProhorovResult prohorov_distance(const FiniteMeasure& mu1, const FiniteMeasure& mu2,
                                 double tol = 1e-9);

/// The rectangular-lemma construction mu2' = xi2' + mu2 - xi2 with
/// xi' = (mu1' ^ xi1) (x) L, L the row-normalised kernel of xi.
FiniteMeasure rectangular_completion(const FiniteMeasure& mu1, const FiniteMeasure& mu1_sub,
                                     const FiniteMeasure& mu2, const Coupling& xi, double eps);

}  // namespace mmlab
