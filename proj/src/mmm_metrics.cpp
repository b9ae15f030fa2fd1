#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mmlab/errors.hpp"
#include "mmlab/mmm_core.hpp"

namespace mmlab {

namespace {

struct PointSignature {
  std::vector<std::pair<double, double>> marks;  // (mark, mass), sorted by mark
};

std::vector<PointSignature> signatures(const MmmSpace& x, const std::vector<std::size_t>& support) {
  const auto nu = x.point_masses();
  std::vector<PointSignature> out;
  out.reserve(support.size());
  for (std::size_t p : support) {
    PointSignature sig;
    for (const auto& e : x.kernel(p)) sig.marks.emplace_back(e.mark, e.prob * nu[p]);
    std::sort(sig.marks.begin(), sig.marks.end());
    out.push_back(std::move(sig));
  }
  return out;
}

bool same_signature(const PointSignature& a, const PointSignature& b, const MarkSpace& marks, double slack) {
  if (a.marks.size() != b.marks.size()) return false;
  for (std::size_t i = 0; i < a.marks.size(); ++i) {
    if (marks.distance(a.marks[i].first, b.marks[i].first) > slack) return false;
    if (std::abs(a.marks[i].second - b.marks[i].second) > slack) return false;
  }
  return true;
}

}  // namespace

bool equivalent(const MmmSpace& x1, const MmmSpace& x2, double slack) {
  const auto s1 = x1.support_points();
  const auto s2 = x2.support_points();
  if (s1.size() > kMaxEquivalenceSupport || s2.size() > kMaxEquivalenceSupport)
    throw capability_error("equivalent: supports larger than " + std::to_string(kMaxEquivalenceSupport) +
                           " points are not supported");
  if (!(x1.marks() == x2.marks())) return false;
  if (s1.size() != s2.size()) return false;
  const auto sig1 = signatures(x1, s1);
  const auto sig2 = signatures(x2, s2);
  const std::size_t n = s1.size();

  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || !same_signature(sig1[i], sig2[j], x1.marks(), slack)) continue;
      bool isometric = true;
      for (std::size_t k = 0; k < i && isometric; ++k)
        isometric = std::abs(x1.space()(s1[i], s1[k]) - x2.space()(s2[j], s2[image[k]])) <= slack;
      if (!isometric) continue;
      used[j] = true;
      image[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return extend(extend, 0);
}

MarkedDistanceMatrixSample sample_distance_matrix(const MmmSpace& x, std::size_t m, Rng& rng) {
  if (m < 1) throw std::domain_error("sample_distance_matrix: order must be at least 1");
  if (!(x.total_mass() > 0.0)) throw std::domain_error("sample_distance_matrix: zero total mass");
  const auto& atoms = x.atoms();
  std::vector<double> weights(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) weights[i] = std::max(atoms[i].mass, 0.0);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  std::vector<std::size_t> drawn(m);
  for (auto& d : drawn) d = pick(rng);
  MarkedDistanceMatrixSample out;
  out.order = m;
  out.dist.reserve(m * (m - 1) / 2);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k + 1; l < m; ++l) out.dist.push_back(x.space()(atoms[drawn[k]].point, atoms[drawn[l]].point));
  for (std::size_t k = 0; k < m; ++k) out.marks.push_back(atoms[drawn[k]].mark);
  return out;
}

CommonEmbedding embed(const MmmSpace& x1, const MmmSpace& x2, const std::vector<double>& cross) {
  const std::size_t n1 = x1.space().size(), n2 = x2.space().size(), n = n1 + n2;
  if (cross.size() != n1 * n2) throw std::domain_error("embed: cross matrix has wrong shape");

  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) d[i * n + j] = x1.space()(i, j);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) d[(n1 + i) * n + n1 + j] = x2.space()(i, j);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      if (!(cross[i * n2 + j] >= 0.0)) throw std::domain_error("embed: cross distances must be nonnegative");
      d[i * n + n1 + j] = d[(n1 + j) * n + i] = cross[i * n2 + j];
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);

  constexpr double slack = 1e-9;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      if (d[i * n + j] < x1.space()(i, j) - slack) throw std::domain_error("embed: first space is not isometrically embedded");
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      if (d[(n1 + i) * n + n1 + j] < x2.space()(i, j) - slack)
        throw std::domain_error("embed: second space is not isometrically embedded");

  const auto a1 = x1.support_atoms();
  const auto a2 = x2.support_atoms();
  struct Node {
    std::size_t point;  // index into the glued point set
    double mark;
  };
  std::vector<Node> nodes;
  for (std::size_t a : a1) nodes.push_back({x1.atoms()[a].point, x1.atoms()[a].mark});
  for (std::size_t a : a2) nodes.push_back({n1 + x2.atoms()[a].point, x2.atoms()[a].mark});
  const std::size_t m = nodes.size();
  std::vector<double> atom_dist(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      atom_dist[i * m + j] = i == j ? 0.0 : d[nodes[i].point * n + nodes[j].point] + x1.marks().distance(nodes[i].mark, nodes[j].mark);
  auto space = std::make_shared<const FiniteSpace>(FiniteSpace::with_default_labels(std::move(atom_dist), m));

  std::vector<double> m1(m, 0.0), m2(m, 0.0);
  for (std::size_t i = 0; i < a1.size(); ++i) m1[i] = x1.atoms()[a1[i]].mass;
  for (std::size_t i = 0; i < a2.size(); ++i) m2[a1.size() + i] = x2.atoms()[a2[i]].mass;

  std::vector<double> closed(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) closed[i * n2 + j] = d[i * n + n1 + j];
  return CommonEmbedding{std::move(closed), space, FiniteMeasure(space, std::move(m1)), FiniteMeasure(space, std::move(m2))};
}

namespace {

using Correspondence = std::vector<std::pair<std::size_t, std::size_t>>;

/// Glues along a correspondence with half its distortion; always a valid
/// cross-distance matrix for a nonempty correspondence.
std::vector<double> glue(const MmmSpace& x1, const MmmSpace& x2, const Correspondence& corr) {
  const std::size_t n1 = x1.space().size(), n2 = x2.space().size();
  double distortion = 0.0;
  for (const auto& [a, b] : corr)
    for (const auto& [c, e] : corr) distortion = std::max(distortion, std::abs(x1.space()(a, c) - x2.space()(b, e)));
  std::vector<double> cross(n1 * n2, std::numeric_limits<double>::infinity());
  for (std::size_t x = 0; x < n1; ++x)
    for (std::size_t y = 0; y < n2; ++y)
      for (const auto& [a, b] : corr)
        cross[x * n2 + y] = std::min(cross[x * n2 + y], x1.space()(x, a) + 0.5 * distortion + x2.space()(b, y));
  return cross;
}

Correspondence pair_atoms(const MmmSpace& x1, const MmmSpace& x2, bool by_mass) {
  auto order = [by_mass](const MmmSpace& x) {
    auto idx = x.support_atoms();
    if (by_mass)
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const Atom& p = x.atoms()[a];
        const Atom& q = x.atoms()[b];
        if (p.mass != q.mass) return p.mass > q.mass;
        return p.mark < q.mark;
      });
    return idx;
  };
  const auto o1 = order(x1);
  const auto o2 = order(x2);
  Correspondence corr;
  for (std::size_t i = 0; i < std::min(o1.size(), o2.size()); ++i)
    corr.emplace_back(x1.atoms()[o1[i]].point, x2.atoms()[o2[i]].point);
  std::sort(corr.begin(), corr.end());
  corr.erase(std::unique(corr.begin(), corr.end()), corr.end());
  return corr;
}

double lower_limit(const MmmSpace& x1, const MmmSpace& x2, const std::vector<double>& cross, std::size_t x,
                   std::size_t y) {
  const std::size_t n1 = x1.space().size(), n2 = x2.space().size();
  double lb = 0.0;
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      if (a == x && b == y) continue;
      lb = std::max(lb, std::abs(x1.space()(x, a) - x2.space()(y, b)) - cross[a * n2 + b]);
    }
  return lb;
}

}  // namespace

MgpBound mgp_upper(const MmmSpace& x1, const MmmSpace& x2, int budget, Rng& rng, double tol) {
  if (budget <= 0) throw std::domain_error("mgp_upper: budget must be positive");
  if (x1.space().size() == 0 || x2.space().size() == 0) throw std::domain_error("mgp_upper: empty space");
  const std::size_t n1 = x1.space().size(), n2 = x2.space().size();

  auto objective = [&](const std::vector<double>& cross, std::vector<double>* closed) {
    auto e = embed(x1, x2, cross);
    if (closed) *closed = e.cross;
    return prohorov_distance(e.mu1, e.mu2, tol).distance;
  };

  std::vector<std::vector<double>> starts;
  for (bool by_mass : {true, false}) {
    const auto corr = pair_atoms(x1, x2, by_mass);
    if (!corr.empty()) starts.push_back(glue(x1, x2, corr));
  }
  if (n1 == n2) {
    Correspondence identity;
    for (std::size_t i = 0; i < n1; ++i) identity.emplace_back(i, i);
    starts.push_back(glue(x1, x2, identity));
  }
  starts.emplace_back(n1 * n2, 0.5 * std::max(x1.space().diameter(), x2.space().diameter()));

  std::vector<double> cross;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    std::vector<double> closed;
    const double v = objective(s, &closed);
    if (v < best) {
      best = v;
      cross = std::move(closed);
    }
  }

  std::vector<std::size_t> entries(n1 * n2);
  std::iota(entries.begin(), entries.end(), 0);
  MgpBound out;
  for (int sweep = 0; sweep < budget && best > 0.0; ++sweep) {
    ++out.sweeps;
    std::shuffle(entries.begin(), entries.end(), rng);
    bool improved = false;
    for (std::size_t e : entries) {
      const double current = cross[e];
      const double lb = lower_limit(x1, x2, cross, e / n2, e % n2);
      for (double candidate : {lb, 0.5 * (lb + current)}) {
        if (!(candidate < current - 1e-12)) continue;
        auto trial = cross;
        trial[e] = candidate;
        std::vector<double> closed;
        const double v = objective(trial, &closed);
        if (v < best - 1e-12) {
          best = v;
          cross = std::move(closed);
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }
  out.bound = best + tol;
  out.cross = std::move(cross);
  return out;
}

double mgw_lower_diagnostic(const MmmSpace& x1, const MmmSpace& x2, std::size_t m, std::size_t n_samples,
                            Rng& rng) {
  if (m < 2) throw std::domain_error("mgw_lower_diagnostic: order must be at least 2");
  if (n_samples < 1) throw std::domain_error("mgw_lower_diagnostic: need at least one sample");

  // Distinct samples become points; repeated draws only add mass.
  std::map<MarkedDistanceMatrixSample, std::size_t> index;
  std::vector<MarkedDistanceMatrixSample> points;
  std::vector<std::pair<double, double>> mass;
  auto draw = [&](const MmmSpace& x, bool first) {
    const double w = x.total_mass() / static_cast<double>(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
      auto sample = sample_distance_matrix(x, m, rng);
      auto [it, inserted] = index.emplace(sample, points.size());
      if (inserted) {
        points.push_back(std::move(sample));
        mass.emplace_back(0.0, 0.0);
      }
      (first ? mass[it->second].first : mass[it->second].second) += w;
    }
  };
  draw(x1, true);
  draw(x2, false);

  const std::size_t n = points.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < points[i].dist.size(); ++k)
        v = std::max(v, std::min(1.0, std::abs(points[i].dist[k] - points[j].dist[k])));
      for (std::size_t k = 0; k < m; ++k)
        v = std::max(v, std::min(1.0, x1.marks().distance(points[i].marks[k], points[j].marks[k])));
      d[i * n + j] = d[j * n + i] = v;
    }
  auto space = std::make_shared<const FiniteSpace>(FiniteSpace::with_default_labels(std::move(d), n));
  std::vector<double> m1(n), m2(n);
  for (std::size_t i = 0; i < n; ++i) std::tie(m1[i], m2[i]) = mass[i];
  return prohorov_distance(FiniteMeasure(space, std::move(m1)), FiniteMeasure(space, std::move(m2))).distance;
}

FmmSpace dense_fmm_approx(const MmmSpace& x, int n) {
  if (n < 0) throw std::domain_error("dense_fmm_approx: n must be nonnegative");
  struct Point {
    std::size_t point;
    double mark;
    double mass;
  };
  std::vector<Point> pts;
  for (const Atom& a : x.atoms()) {
    if (!(a.mass > 0.0)) continue;
    auto it = std::find_if(pts.begin(), pts.end(), [&](const Point& p) { return p.point == a.point && p.mark == a.mark; });
    if (it == pts.end()) pts.push_back({a.point, a.mark, a.mass});
    else it->mass += a.mass;
  }
  const double cap = std::exp(-static_cast<double>(n));
  const std::size_t k = pts.size();
  std::vector<double> d(k * k);
  std::vector<std::string> labels;
  std::vector<double> weight, markmap;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      d[i * k + j] = x.space()(pts[i].point, pts[j].point) + std::min(cap, x.marks().distance(pts[i].mark, pts[j].mark));
    labels.push_back(x.space().labels()[pts[i].point] + ":" + x.marks().label(pts[i].mark));
    weight.push_back(pts[i].mass);
    markmap.push_back(pts[i].mark);
  }
  return FmmSpace(std::make_shared<const FiniteSpace>(std::move(labels), std::move(d)), x.marks(), std::move(weight),
                  std::move(markmap));
}

}  // namespace mmlab
