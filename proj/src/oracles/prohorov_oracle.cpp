#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmlab/oracles/oracles.hpp"

namespace mmlab::oracle {

double prohorov_direct(const FiniteMeasure& mu1, const FiniteMeasure& mu2) {
  if (!mu1.same_space(mu2)) throw std::domain_error("prohorov_direct: measures live on different spaces");
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < mu1.size(); ++i)
    if (mu1[i] > 0.0 || mu2[i] > 0.0) pts.push_back(i);
  const std::size_t k = pts.size();
  if (k > 20) throw std::domain_error("prohorov_direct: too many points");
  const FiniteSpace& s = mu1.space();

  std::vector<double> levels{0.0};
  for (std::size_t a : pts)
    for (std::size_t b : pts) levels.push_back(s(a, b));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double dj = levels[j];
    const double next = j + 1 < levels.size() ? levels[j + 1] : std::numeric_limits<double>::infinity();
    // For eps in (dj, next] the eps-neighbourhood is {y : d(y, A) <= dj}.
    double g = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      double in1 = 0.0, in2 = 0.0, nb1 = 0.0, nb2 = 0.0;
      for (std::size_t a = 0; a < k; ++a)
        if (mask >> a & 1) {
          in1 += mu1[pts[a]];
          in2 += mu2[pts[a]];
        }
      for (std::size_t y = 0; y < k; ++y) {
        bool near = false;
        for (std::size_t a = 0; a < k && !near; ++a) near = (mask >> a & 1) && s(pts[y], pts[a]) <= dj;
        if (near) {
          nb1 += mu1[pts[y]];
          nb2 += mu2[pts[y]];
        }
      }
      g = std::max({g, in1 - nb2, in2 - nb1});
    }
    const double candidate = std::max(dj, g);
    if (candidate <= next) best = std::min(best, candidate);
  }
  return best;
}

}  // namespace mmlab::oracle
