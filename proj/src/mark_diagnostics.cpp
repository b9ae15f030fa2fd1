#include "mmlab/mark_diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "mmlab/errors.hpp"

namespace mmlab {

namespace {

constexpr double kSlack = 1e-12;

double truncated(double d) { return std::min(1.0, d); }

// Exact maximum-weight independent set on at most 64 vertices.
class Mwis {
 public:
  Mwis(std::vector<std::uint64_t> adj, std::vector<double> w) : adj_(std::move(adj)), w_(std::move(w)) {}

  std::uint64_t solve(std::uint64_t mask) {
    best_ = -1.0;
    best_set_ = 0;
    search(mask, 0, 0.0);
    return best_set_;
  }

 private:
  double weight(std::uint64_t mask) const {
    double s = 0.0;
    for (; mask; mask &= mask - 1) s += w_[std::countr_zero(mask)];
    return s;
  }

  // Best set inside `mask` on its own, ignoring the global incumbent.
  std::pair<double, std::uint64_t> best_in(std::uint64_t mask) {
    const double saved_best = best_;
    const std::uint64_t saved_set = best_set_;
    best_ = -1.0;
    best_set_ = 0;
    search(mask, 0, 0.0);
    std::pair<double, std::uint64_t> out{best_, best_set_};
    best_ = saved_best;
    best_set_ = saved_set;
    return out;
  }

  void record(std::uint64_t chosen, double value) {
    if (value > best_) {
      best_ = value;
      best_set_ = chosen;
    }
  }

  void search(std::uint64_t mask, std::uint64_t chosen, double value) {
    // Vertices without neighbours in mask are always taken.
    std::uint64_t free = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if ((adj_[v] & mask) == 0) free |= std::uint64_t{1} << v;
    }
    chosen |= free;
    value += weight(free);
    mask &= ~free;
    if (mask == 0) return record(chosen, value);
    if (value + weight(mask) <= best_) return;

    // Independent components are solved separately and added up.
    std::uint64_t comp = mask & (~mask + 1), frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t m = frontier; m; m &= m - 1) next |= adj_[std::countr_zero(m)] & mask;
      frontier = next & ~comp;
      comp |= next;
    }
    if (comp != mask) {
      const auto a = best_in(comp);
      const auto b = best_in(mask & ~comp);
      return record(chosen | a.second | b.second, value + a.first + b.first);
    }

    int pivot = -1, degree = -1;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int dv = std::popcount(adj_[v] & mask);
      if (dv > degree) {
        degree = dv;
        pivot = v;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pivot;
    search(mask & ~bit & ~adj_[pivot], chosen | bit, value + w_[pivot]);
    search(mask & ~bit, chosen, value);
  }

  std::vector<std::uint64_t> adj_;
  std::vector<double> w_;
  double best_ = -1.0;
  std::uint64_t best_set_ = 0;
};

void check_positive(double delta, double eps, const char* who) {
  if (!(delta > 0.0) || !(eps > 0.0)) throw std::domain_error(std::string(who) + ": delta and eps must be positive");
}

}  // namespace

double beta_mark(const std::vector<std::pair<double, double>>& xi, const MarkSpace& marks) {
  double s = 0.0;
  for (const auto& [u, a] : xi)
    for (const auto& [v, b] : xi) s += truncated(marks.distance(u, v)) * a * b;
  return s;
}

double beta(const MmmSpace& x) {
  std::map<std::size_t, std::vector<std::pair<double, double>>> by_point;
  for (const Atom& a : x.atoms())
    if (a.mass > 0.0) by_point[a.point].emplace_back(a.mark, a.mass);
  double total = 0.0;
  for (auto& [p, entries] : by_point) {
    double nu = 0.0;
    for (const auto& e : entries) nu += e.second;
    // nu(x) * beta(K_x) = beta(mu(x, .)) / nu(x)
    total += beta_mark(entries, x.marks()) / nu;
  }
  return total;
}

MmmSpace witness_space(const MmmSpace& x, const MembershipReport& report) {
  std::vector<Atom> atoms;
  for (std::size_t i : report.retained) atoms.push_back(x.atoms()[i]);
  return MmmSpace(x.space_ptr(), x.marks(), std::move(atoms));
}

namespace {

template <class Violates>
MembershipReport pair_scan(const MmmSpace& x, Violates violates) {
  MembershipReport report;
  report.retained = x.support_atoms();
  for (std::size_t i : report.retained) report.retained_mass += x.atoms()[i].mass;
  const auto& atoms = x.atoms();
  for (std::size_t ii = 0; ii < report.retained.size(); ++ii)
    for (std::size_t jj = ii + 1; jj < report.retained.size(); ++jj) {
      const std::size_t i = report.retained[ii], j = report.retained[jj];
      const double r = x.space()(atoms[i].point, atoms[j].point);
      const double d = x.marks().distance(atoms[i].mark, atoms[j].mark);
      if (violates(r, d)) {
        report.violation = AtomPair{i, j, r, d};
        return report;
      }
    }
  report.verdict = true;
  return report;
}

}  // namespace

MembershipReport in_H(const MmmSpace& x, const Modulus& h) {
  return pair_scan(x, [&](double r, double d) { return d > h(r) + kSlack; });
}

MembershipReport in_D(const MmmSpace& x, double delta, double eps) {
  check_positive(delta, eps, "in_D");
  return pair_scan(x, [&](double r, double d) { return r < delta && d > eps + kSlack; });
}

namespace detail {

MembershipReport in_M_unchecked(const MmmSpace& x, double delta, double eps, bool allow_approx) {
  const auto& atoms = x.atoms();
  const auto support = x.support_atoms();
  const std::size_t n = support.size();
  std::vector<std::vector<std::size_t>> adj(n);
  std::optional<AtomPair> first_conflict;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Atom& a = atoms[support[i]];
      const Atom& b = atoms[support[j]];
      const double r = x.space()(a.point, b.point);
      if (!(r < delta)) continue;
      const double d = x.marks().distance(a.mark, b.mark);
      if (d > eps + kSlack) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        if (!first_conflict) first_conflict = AtomPair{support[i], support[j], r, d};
      }
    }

  MembershipReport report;
  std::vector<bool> keep(n, false);
  std::vector<int> component(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    std::vector<std::size_t> members{s};
    component[s] = static_cast<int>(s);
    for (std::size_t k = 0; k < members.size(); ++k)
      for (std::size_t t : adj[members[k]])
        if (component[t] < 0) {
          component[t] = static_cast<int>(s);
          members.push_back(t);
        }
    if (members.size() == 1) {
      keep[s] = true;
      continue;
    }
    if (members.size() <= kMaxExactComponent) {
      std::map<std::size_t, int> local;
      for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = static_cast<int>(k);
      std::vector<std::uint64_t> bits(members.size(), 0);
      std::vector<double> w(members.size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        w[k] = atoms[support[members[k]]].mass;
        for (std::size_t t : adj[members[k]]) bits[k] |= std::uint64_t{1} << local[t];
      }
      const std::uint64_t all = members.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << members.size()) - 1;
      const std::uint64_t chosen = Mwis(bits, w).solve(all);
      for (std::size_t k = 0; k < members.size(); ++k)
        if (chosen >> k & 1) keep[members[k]] = true;
      continue;
    }
    if (!allow_approx)
      throw capability_error("in_M: conflict component of " + std::to_string(members.size()) +
                             " atoms exceeds the exact limit of " + std::to_string(kMaxExactComponent));
    report.approximate = true;
    // Greedy: heavy atoms with few conflicts first.
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      const double ka = atoms[support[a]].mass / static_cast<double>(adj[a].size() + 1);
      const double kb = atoms[support[b]].mass / static_cast<double>(adj[b].size() + 1);
      return ka != kb ? ka > kb : a < b;
    });
    for (std::size_t v : members) {
      bool blocked = false;
      for (std::size_t t : adj[v]) blocked = blocked || keep[t];
      if (!blocked) keep[v] = true;
    }
  }

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    total += atoms[support[k]].mass;
    if (keep[k]) {
      report.retained.push_back(support[k]);
      report.retained_mass += atoms[support[k]].mass;
    }
  }
  report.verdict = report.retained_mass >= total - eps - kSlack;
  if (!report.verdict) report.violation = first_conflict;
  return report;
}

}  // namespace detail

MembershipReport in_M(const MmmSpace& x, double delta, double eps, bool allow_approx) {
  check_positive(delta, eps, "in_M");
  return detail::in_M_unchecked(x, delta, eps, allow_approx);
}

bool in_Mh(const MmmSpace& x, const Modulus& h, const std::vector<double>& delta_grid, bool allow_approx) {
  if (delta_grid.empty()) throw std::domain_error("in_Mh: empty delta grid");
  for (double delta : delta_grid) {
    if (!(delta > 0.0)) throw std::domain_error("in_Mh: grid values must be positive");
    const double eps = h(delta);
    if (std::isinf(eps)) continue;
    if (!detail::in_M_unchecked(x, delta, eps, allow_approx).verdict) return false;
  }
  return true;
}

double rho_lower_bound(const MmmSpace& x, int m, const std::vector<double>& delta_grid,
                       const std::vector<double>& eps_grid, bool allow_approx) {
  if (m < 1) throw std::domain_error("rho_lower_bound: m must be at least 1");
  if (delta_grid.empty() || eps_grid.empty()) throw std::domain_error("rho_lower_bound: empty grid");
  auto deltas = delta_grid;
  std::sort(deltas.rbegin(), deltas.rend());
  auto epss = eps_grid;
  std::sort(epss.begin(), epss.end());
  const double mass = x.total_mass();
  const double target = 1.0 / m;
  for (double delta : deltas) {
    if (!(delta > 0.0)) continue;
    for (double eps : epss) {
      if (!(eps > 0.0)) continue;
      if (!((eps + 2 * delta) * (2 + mass + delta) < target)) break;  // larger eps only worse
      if (detail::in_M_unchecked(x, 2 * delta, eps, allow_approx).verdict) return delta;
    }
  }
  return 0.0;
}

double fgp_surrogate(const MmmSpace& x, const MmmSpace& y, int m_max, const FgpOptions& opts, Rng& rng) {
  if (m_max < 0) throw std::domain_error("fgp_surrogate: m_max must be nonnegative");
  double value = mgp_upper(x, y, opts.budget, rng).bound;
  double penalty = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double rx = rho_lower_bound(x, m, opts.delta_grid, opts.eps_grid, opts.allow_approx);
    const double ry = rho_lower_bound(y, m, opts.delta_grid, opts.eps_grid, opts.allow_approx);
    if (rx == 0.0 || ry == 0.0)
      throw capability_error("fgp_surrogate: cannot certify membership in FMI at level m = " + std::to_string(m));
    penalty = std::max(penalty, std::min(std::ldexp(1.0, -m), std::abs(1.0 / rx - 1.0 / ry)));
  }
  return value + penalty;
}

std::vector<double> dyadic_grid(int k) {
  std::vector<double> g;
  for (int i = 1; i <= k; ++i) g.push_back(std::ldexp(1.0, -i));
  return g;
}

}  // namespace mmlab
