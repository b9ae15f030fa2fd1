#include "mmlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mmlab/max_flow.hpp"

namespace mmlab {

FiniteMeasure::FiniteMeasure(std::shared_ptr<const FiniteSpace> space, std::vector<double> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw std::domain_error("FiniteMeasure: null space");
  if (mass_.size() != space_->size())
    throw std::domain_error("FiniteMeasure: one mass per point required");
  for (double m : mass_)
    if (!(m >= 0.0) || !std::isfinite(m))
      throw std::domain_error("FiniteMeasure: masses must be finite and nonnegative");
}

FiniteMeasure FiniteMeasure::zero(std::shared_ptr<const FiniteSpace> space) {
  const std::size_t n = space->size();
  return FiniteMeasure(std::move(space), std::vector<double>(n, 0.0));
}

double FiniteMeasure::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

std::vector<std::size_t> FiniteMeasure::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mass_.size(); ++i)
    if (mass_[i] > 0.0) out.push_back(i);
  return out;
}

bool FiniteMeasure::same_space(const FiniteMeasure& other) const {
  return space_ == other.space_ || *space_ == *other.space_;
}

bool FiniteMeasure::dominated_by(const FiniteMeasure& other, double slack) const {
  if (!same_space(other)) return false;
  for (std::size_t i = 0; i < mass_.size(); ++i)
    if (mass_[i] > other.mass_[i] + slack) return false;
  return true;
}

std::vector<double> Coupling::first_marginal() const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j);
  return out;
}

std::vector<double> Coupling::second_marginal() const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[j] += (*this)(i, j);
  return out;
}

double Coupling::total() const { return std::accumulate(xi_.begin(), xi_.end(), 0.0); }

namespace {

void require_same_space(const FiniteMeasure& a, const FiniteMeasure& b, const char* what) {
  if (!a.same_space(b)) throw std::domain_error(std::string(what) + ": measures live on different spaces");
}

}  // namespace

double variational_distance(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  require_same_space(mu, nu, "variational_distance");
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double diff = mu[i] - nu[i];
    if (diff > 0) plus += diff;
    else minus -= diff;
  }
  return std::max(plus, minus);
}

FiniteMeasure restrict(const FiniteMeasure& mu, const std::vector<bool>& keep) {
  if (keep.size() != mu.size()) throw std::domain_error("restrict: subset mask has wrong length");
  std::vector<double> mass(mu.size(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (keep[i]) mass[i] = mu[i];
  return FiniteMeasure(mu.space_ptr(), std::move(mass));
}

Feasibility prohorov_feasible(const FiniteMeasure& mu1, const FiniteMeasure& mu2, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("prohorov_feasible: eps must be positive");
  require_same_space(mu1, mu2, "prohorov_feasible");
  const FiniteSpace& space = mu1.space();
  const auto left = mu1.support();
  const auto right = mu2.support();

  // source, left atoms, right atoms, sink
  const std::size_t source = 0, sink = 1 + left.size() + right.size();
  MaxFlow net(sink + 1);
  for (std::size_t a = 0; a < left.size(); ++a) net.add_edge(source, 1 + a, mu1[left[a]]);
  for (std::size_t b = 0; b < right.size(); ++b)
    net.add_edge(1 + left.size() + b, sink, mu2[right[b]]);

  struct Arc {
    std::size_t id, x, y;
  };
  std::vector<Arc> arcs;
  const double cap = mu1.total() + mu2.total() + 1.0;
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t b = 0; b < right.size(); ++b)
      if (space(left[a], right[b]) < eps - kNeighbourhoodSlack)
        arcs.push_back({net.add_edge(1 + a, 1 + left.size() + b, cap), left[a], right[b]});

  Feasibility out;
  out.flow = net.run(source, sink);
  const double required = std::max(mu1.total(), mu2.total()) - eps;
  out.feasible = out.flow >= required - 1e-12;
  if (out.feasible) {
    Coupling xi(space.size());
    for (const Arc& arc : arcs) {
      const double f = net.flow_on(arc.id);
      if (f > 0.0) xi.at(arc.x, arc.y) += f;
    }
    out.witness = std::move(xi);
  }
  return out;
}

bool is_valid_witness(const Coupling& xi, const FiniteMeasure& mu1, const FiniteMeasure& mu2,
                      double eps, double slack) {
  const FiniteSpace& space = mu1.space();
  if (xi.size() != space.size()) return false;
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (xi(i, j) < -slack) return false;
      if (xi(i, j) > slack && !(space(i, j) < eps)) return false;
    }
  const auto m1 = xi.first_marginal();
  const auto m2 = xi.second_marginal();
  double t1 = 0.0, t2 = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (m1[i] > mu1[i] + slack || m2[i] > mu2[i] + slack) return false;
    t1 += m1[i];
    t2 += m2[i];
  }
  return mu1.total() - t1 <= eps + slack && mu2.total() - t2 <= eps + slack;
}

ProhorovResult prohorov_distance(const FiniteMeasure& mu1, const FiniteMeasure& mu2, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("prohorov_distance: tol must be positive");
  require_same_space(mu1, mu2, "prohorov_distance");
  const FiniteSpace& space = mu1.space();
  const auto left = mu1.support();
  const auto right = mu2.support();

  // Feasibility can only switch at a cross distance (edge set changes) or
  // where the deficit term catches up; the candidates bracket the threshold.
  std::vector<double> candidates{std::abs(mu1.total() - mu2.total())};
  double max_dist = 0.0;
  for (std::size_t x : left)
    for (std::size_t y : right) {
      candidates.push_back(space(x, y));
      max_dist = std::max(max_dist, space(x, y));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  candidates.erase(std::remove_if(candidates.begin(), candidates.end(), [](double c) { return !(c > 0.0); }),
                   candidates.end());

  auto feasible = [&](double eps) { return prohorov_feasible(mu1, mu2, eps).feasible; };

  double lo = 0.0;  // infeasible by convention (eps must be > 0)
  double hi = max_dist + mu1.total() + mu2.total() + tol;

  // Smallest feasible candidate by binary search; feasibility is monotone in eps.
  std::size_t first = 0, last = candidates.size();
  while (first < last) {
    const std::size_t mid = first + (last - first) / 2;
    if (feasible(candidates[mid])) last = mid;
    else first = mid + 1;
  }
  if (first < candidates.size()) hi = std::min(hi, candidates[first]);
  if (first > 0) lo = candidates[first - 1];

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) hi = mid;
    else lo = mid;
  }

  auto at = prohorov_feasible(mu1, mu2, lo + tol);
  if (!at.feasible) at = prohorov_feasible(mu1, mu2, hi);  // unreachable barring rounding
  return ProhorovResult{lo, std::move(*at.witness)};
}

FiniteMeasure rectangular_completion(const FiniteMeasure& mu1, const FiniteMeasure& mu1_sub,
                                     const FiniteMeasure& mu2, const Coupling& xi, double eps) {
  require_same_space(mu1, mu1_sub, "rectangular_completion");
  require_same_space(mu1, mu2, "rectangular_completion");
  if (!mu1_sub.dominated_by(mu1)) throw std::domain_error("rectangular_completion: mu1' must be <= mu1");
  if (variational_distance(mu1, mu1_sub) > eps + 1e-12)
    throw std::domain_error("rectangular_completion: ||mu1 - mu1'|| exceeds eps");
  const std::size_t n = mu1.size();
  if (xi.size() != n) throw std::domain_error("rectangular_completion: coupling has wrong shape");
  const auto xi1 = xi.first_marginal();
  const auto xi2 = xi.second_marginal();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (xi(i, j) < 0.0) throw std::domain_error("rectangular_completion: coupling has negative entries");
    if (xi1[i] > mu1[i] + 1e-12 || xi2[i] > mu2[i] + 1e-12)
      throw std::domain_error("rectangular_completion: coupling marginals exceed the measures");
  }

  std::vector<double> xi2_sub(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (xi1[i] <= 0.0) continue;  // zero rows carry no kernel
    const double keep = std::min(mu1_sub[i], xi1[i]) / xi1[i];
    for (std::size_t j = 0; j < n; ++j) xi2_sub[j] += keep * xi(i, j);
  }
  std::vector<double> mass(n);
  for (std::size_t j = 0; j < n; ++j) mass[j] = std::clamp(xi2_sub[j] + mu2[j] - xi2[j], 0.0, mu2[j]);
  return FiniteMeasure(mu2.space_ptr(), std::move(mass));
}

}  // namespace mmlab
