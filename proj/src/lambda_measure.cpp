#include "mmlab/lambda_measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace mmlab {

LambdaMeasure LambdaMeasure::dirac(double location, double mass) {
  LambdaMeasure l;
  l.atoms.emplace_back(location, mass);
  l.validate();
  return l;
}

LambdaMeasure LambdaMeasure::uniform(double scale) {
  LambdaMeasure l;
  l.density_breaks = {0.0, 1.0};
  l.density_values = {scale};
  l.validate();
  return l;
}

void LambdaMeasure::validate() const {
  for (const auto& [y, m] : atoms)
    if (!(y >= 0.0 && y <= 1.0) || !(m >= 0.0) || !std::isfinite(m))
      throw std::domain_error("LambdaMeasure: atoms need a location in [0,1] and finite nonnegative mass");
  if (density_breaks.empty() && density_values.empty()) return;
  if (density_breaks.size() != density_values.size() + 1 || density_breaks.front() != 0.0 ||
      density_breaks.back() != 1.0)
    throw std::domain_error("LambdaMeasure: density breaks must run from 0 to 1 with one value per piece");
  for (std::size_t i = 0; i + 1 < density_breaks.size(); ++i)
    if (!(density_breaks[i + 1] > density_breaks[i]))
      throw std::domain_error("LambdaMeasure: density breaks must increase");
  for (double v : density_values)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::domain_error("LambdaMeasure: density must be finite and nonnegative");
}

double LambdaMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.second;
  for (std::size_t i = 0; i < density_values.size(); ++i)
    s += density_values[i] * (density_breaks[i + 1] - density_breaks[i]);
  return s;
}

LambdaMeasure LambdaMeasure::operator+(const LambdaMeasure& other) const {
  LambdaMeasure out;
  out.atoms = atoms;
  out.atoms.insert(out.atoms.end(), other.atoms.begin(), other.atoms.end());
  if (density_values.empty()) {
    out.density_breaks = other.density_breaks;
    out.density_values = other.density_values;
  } else if (other.density_values.empty()) {
    out.density_breaks = density_breaks;
    out.density_values = density_values;
  } else {
    // Merge the two partitions and add densities piece by piece.
    std::vector<double> breaks = density_breaks;
    breaks.insert(breaks.end(), other.density_breaks.begin(), other.density_breaks.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto value_at = [](const LambdaMeasure& l, double y) {
      for (std::size_t i = 0; i < l.density_values.size(); ++i)
        if (y >= l.density_breaks[i] && y < l.density_breaks[i + 1]) return l.density_values[i];
      return 0.0;
    };
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
      out.density_values.push_back(value_at(*this, mid) + value_at(other, mid));
    }
    out.density_breaks = std::move(breaks);
  }
  return out;
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = f(0.5 * (a + m)), rm = f(0.5 * (m + b));
  const double left = simpson(a, m, fa, lm, fm), right = simpson(m, b, fm, rm, fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return adaptive(f, a, m, fa, lm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, b, fm, rm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  // A coarse first pass sets the absolute target for the adaptive refinement.
  const int pieces = 16;
  double coarse = 0.0;
  std::vector<double> parts;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + (b - a) * i / pieces, hi = a + (b - a) * (i + 1) / pieces;
    coarse += simpson(lo, hi, f(lo), f(0.5 * (lo + hi)), f(hi));
  }
  const double tol = std::max(std::abs(coarse) * rel_tol, 1e-300) / pieces;
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + (b - a) * i / pieces, hi = a + (b - a) * (i + 1) / pieces;
    const double flo = f(lo), fmid = f(0.5 * (lo + hi)), fhi = f(hi);
    total += adaptive(f, lo, hi, flo, fmid, fhi, simpson(lo, hi, flo, fmid, fhi), tol, 50);
  }
  return total;
}

}  // namespace

double lambda_rate(const LambdaMeasure& lambda, int n, int k) {
  if (k < 2 || k > n) throw std::domain_error("lambda_rate: need 2 <= k <= N");
  const double p = k - 2, q = n - k;
  auto integrand = [p, q](double y) { return std::pow(y, p) * std::pow(1.0 - y, q); };
  double rate = 0.0;
  for (const auto& [y, m] : lambda.atoms) rate += m * integrand(y);  // std::pow(0, 0) == 1
  for (std::size_t i = 0; i < lambda.density_values.size(); ++i) {
    if (lambda.density_values[i] == 0.0) continue;
    rate += lambda.density_values[i] *
            integrate(integrand, lambda.density_breaks[i], lambda.density_breaks[i + 1], 1e-10);
  }
  return rate;
}

DustFreeDiagnostic dust_free_diagnostic(const LambdaMeasure& lambda) {
  DustFreeDiagnostic out;
  for (const auto& [y, m] : lambda.atoms) {
    if (m == 0.0) continue;
    if (y == 0.0) out.divergent = true;
    else out.integral += m / y;
  }
  for (std::size_t i = 0; i < lambda.density_values.size(); ++i) {
    const double v = lambda.density_values[i];
    if (v == 0.0) continue;
    const double a = lambda.density_breaks[i], b = lambda.density_breaks[i + 1];
    if (a == 0.0) out.divergent = true;
    else out.integral += v * std::log(b / a);
  }
  return out;
}

}  // namespace mmlab
