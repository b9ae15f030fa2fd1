#include "mmlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmlab {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::domain_error("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / xs.size();
}

double standard_error(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / (xs.size() - 1) / xs.size());
}

double binomial_stderr(std::size_t successes, std::size_t trials) {
  if (trials == 0) throw std::domain_error("binomial_stderr: no trials");
  const double p = static_cast<double>(successes) / trials;
  return std::sqrt(p * (1.0 - p) / trials);
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw std::domain_error("wilson_interval: no trials");
  const double n = trials, p = successes / n, z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {low, high};
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

}  // namespace mmlab
