#include "mmlab/mmm_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmlab {

MmmSpace::MmmSpace(std::shared_ptr<const FiniteSpace> space, MarkSpace marks, std::vector<Atom> atoms)
    : space_(std::move(space)), marks_(std::move(marks)), atoms_(std::move(atoms)) {
  if (!space_) throw std::domain_error("MmmSpace: null space");
  for (const Atom& a : atoms_) {
    if (a.point >= space_->size()) throw std::domain_error("MmmSpace: atom refers to a missing point");
    if (!marks_.contains(a.mark)) throw std::domain_error("MmmSpace: atom mark outside the mark space");
    if (!std::isfinite(a.mass)) throw std::domain_error("MmmSpace: atom mass must be finite");
  }
}

double MmmSpace::total_mass() const {
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.mass;
  return total;
}

std::vector<double> MmmSpace::point_masses() const {
  std::vector<double> nu(space_->size(), 0.0);
  for (const Atom& a : atoms_) nu[a.point] += a.mass;
  return nu;
}

std::vector<std::size_t> MmmSpace::support_points() const {
  const auto nu = point_masses();
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < nu.size(); ++x)
    if (nu[x] > 0.0) out.push_back(x);
  return out;
}

std::vector<std::size_t> MmmSpace::support_atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].mass > 0.0) out.push_back(i);
  return out;
}

std::vector<MmmSpace::KernelEntry> MmmSpace::kernel(std::size_t x) const {
  std::vector<KernelEntry> out;
  double nu = 0.0;
  for (const Atom& a : atoms_) {
    if (a.point != x || !(a.mass > 0.0)) continue;
    nu += a.mass;
    auto it = std::find_if(out.begin(), out.end(), [&](const KernelEntry& e) { return e.mark == a.mark; });
    if (it == out.end()) out.push_back({a.mark, a.mass});
    else it->prob += a.mass;
  }
  for (auto& e : out) e.prob /= nu;
  return out;
}

double MmmSpace::atom_distance(std::size_t a, std::size_t b) const {
  return (*space_)(atoms_[a].point, atoms_[b].point) + marks_.distance(atoms_[a].mark, atoms_[b].mark);
}

bool MmmSpace::operator==(const MmmSpace& other) const {
  return *space_ == *other.space_ && marks_ == other.marks_ && atoms_ == other.atoms_;
}

FmmSpace::FmmSpace(std::shared_ptr<const FiniteSpace> space, MarkSpace marks, std::vector<double> weight,
                   std::vector<double> markmap)
    : space_(std::move(space)), marks_(std::move(marks)), weight_(std::move(weight)), markmap_(std::move(markmap)) {
  if (!space_) throw std::domain_error("FmmSpace: null space");
  if (weight_.size() != space_->size() || markmap_.size() != space_->size())
    throw std::domain_error("FmmSpace: weight and mark function need one entry per point");
  for (double u : markmap_)
    if (!marks_.contains(u)) throw std::domain_error("FmmSpace: mark outside the mark space");
}

MmmSpace FmmSpace::to_mmm() const {
  std::vector<Atom> atoms;
  for (std::size_t x = 0; x < weight_.size(); ++x)
    if (weight_[x] > 0.0) atoms.push_back({x, markmap_[x], weight_[x]});
  return MmmSpace(space_, marks_, std::move(atoms));
}

std::vector<std::string> validate(const MmmSpace& x) {
  std::vector<std::string> out;
  for (const auto& v : x.space().metric_violations()) out.push_back("point metric: " + v.describe());
  if (x.marks().is_finite())
    for (const auto& v : x.marks().metric().metric_violations()) out.push_back("mark metric: " + v.describe());
  for (std::size_t i = 0; i < x.atoms().size(); ++i)
    if (x.atoms()[i].mass < 0.0) out.push_back("atom " + std::to_string(i) + " has negative mass");
  return out;
}

}  // namespace mmlab
