#include <stdexcept>

#include "mmlab/oracles/oracles.hpp"

namespace mmlab::oracle {

double max_retained_mass(const MmmSpace& x, double delta, double eps) {
  const auto support = x.support_atoms();
  const std::size_t n = support.size();
  if (n > 20) throw std::domain_error("max_retained_mass: too many atoms");
  std::vector<std::uint32_t> conflicts(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Atom& a = x.atoms()[support[i]];
      const Atom& b = x.atoms()[support[j]];
      if (x.space()(a.point, b.point) < delta && x.marks().distance(a.mark, b.mark) > eps + 1e-12)
        conflicts[i] |= 1u << j;
    }
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    double mass = 0.0;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (mask >> i & 1) {
        ok = (conflicts[i] & mask) == 0;
        mass += x.atoms()[support[i]].mass;
      }
    if (ok && mass > best) best = mass;
  }
  return best;
}

}  // namespace mmlab::oracle
