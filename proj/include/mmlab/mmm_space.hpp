#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mmlab/finite_space.hpp"
#include "mmlab/mark_space.hpp"

namespace mmlab {

/// One atom of mu on X x I.
struct Atom {
  std::size_t point = 0;
  double mark = 0.0;
  double mass = 0.0;

  bool operator==(const Atom&) const = default;
};

/// A marked metric measure space (X, r, mu) with mu atomic on X x I.
///
/// Point indices and marks are checked on construction; metric and mass
/// invariants are reported by validate() instead.
class MmmSpace {
 public:
  struct KernelEntry {
    double mark;
    double prob;
  };

  MmmSpace(std::shared_ptr<const FiniteSpace> space, MarkSpace marks, std::vector<Atom> atoms);

  const FiniteSpace& space() const { return *space_; }
  const std::shared_ptr<const FiniteSpace>& space_ptr() const { return space_; }
  const MarkSpace& marks() const { return marks_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  double total_mass() const;
  /// The marginal nu on points.
  std::vector<double> point_masses() const;
  std::vector<std::size_t> support_points() const;
  /// Indices of atoms with positive mass.
  std::vector<std::size_t> support_atoms() const;
  /// K_x as a probability vector over the distinct marks seen at x; empty
  /// when nu(x) = 0.
  std::vector<KernelEntry> kernel(std::size_t x) const;

  /// r + d between two atoms (the product metric on X x I).
  double atom_distance(std::size_t a, std::size_t b) const;

  bool operator==(const MmmSpace& other) const;

 private:
  std::shared_ptr<const FiniteSpace> space_;
  MarkSpace marks_;
  std::vector<Atom> atoms_;
};

/// A functionally-marked space (X, r, nu, kappa).
class FmmSpace {
 public:
  FmmSpace(std::shared_ptr<const FiniteSpace> space, MarkSpace marks, std::vector<double> weight,
           std::vector<double> markmap);

  const FiniteSpace& space() const { return *space_; }
  const std::shared_ptr<const FiniteSpace>& space_ptr() const { return space_; }
  const MarkSpace& marks() const { return marks_; }
  const std::vector<double>& weight() const { return weight_; }
  const std::vector<double>& markmap() const { return markmap_; }

  /// mu = nu (x) delta_kappa, one atom per point of positive weight.
  MmmSpace to_mmm() const;

 private:
  std::shared_ptr<const FiniteSpace> space_;
  MarkSpace marks_;
  std::vector<double> weight_;
  std::vector<double> markmap_;
};

/// Human-readable list of invariant violations; empty iff the space is valid.
std::vector<std::string> validate(const MmmSpace& x);

}  // namespace mmlab
