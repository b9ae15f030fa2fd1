#include "mmlab/criteria.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mmlab {

std::size_t tail_start(std::size_t n) { return n / 2; }

namespace {

std::vector<double> pass_shares(const std::vector<CriterionRow>& rows, std::size_t n_seq, std::size_t n_delta) {
  std::vector<double> share(n_delta, 0.0);
  const std::size_t start = tail_start(n_seq);
  // rows are laid out n-major, one per grid delta
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].n >= start && rows[i].verdict) share[i % n_delta] += 1.0;
  for (double& s : share) s /= static_cast<double>(n_seq - start);
  return share;
}

template <class Sets>
void check_shape(const Sets& sets, std::size_t n_seq, std::size_t n_delta, const char* who) {
  if (sets.size() != n_seq) throw std::domain_error(std::string(who) + ": one set list per space required");
  for (const auto& per_n : sets)
    if (per_n.size() != n_delta) throw std::domain_error(std::string(who) + ": one set per grid delta required");
}

void check_points(const FmmSpace& x, const std::vector<std::size_t>& set, const char* who) {
  for (std::size_t p : set)
    if (p >= x.space().size()) throw std::domain_error(std::string(who) + ": set refers to a missing point");
}

}  // namespace

CriterionReport limit_criterion_theorem(const std::vector<MmmSpace>& seq, const Modulus& h,
                                        const std::vector<double>& delta_grid, double threshold, bool allow_approx) {
  if (seq.empty()) throw std::domain_error("limit_criterion_theorem: empty sequence");
  if (delta_grid.empty()) throw std::domain_error("limit_criterion_theorem: empty delta grid");
  CriterionReport report;
  for (std::size_t n = 0; n < seq.size(); ++n)
    for (double delta : delta_grid) {
      const auto m = detail::in_M_unchecked(seq[n], delta, h(delta), allow_approx);
      report.rows.push_back({n, delta, m.verdict, m.retained_mass, m.retained.size(), 0.0});
    }
  report.per_delta = pass_shares(report.rows, seq.size(), delta_grid.size());
  report.supported = std::all_of(report.per_delta.begin(), report.per_delta.end(),
                                 [&](double s) { return s >= threshold; });
  return report;
}

CriterionReport limit_criterion_sets(const std::vector<FmmSpace>& seq,
                                     const std::vector<std::vector<std::vector<std::size_t>>>& y_sets,
                                     const Modulus& h, const std::vector<double>& delta_grid, double threshold) {
  if (seq.empty()) throw std::domain_error("limit_criterion_sets: empty sequence");
  if (delta_grid.empty()) throw std::domain_error("limit_criterion_sets: empty delta grid");
  check_shape(y_sets, seq.size(), delta_grid.size(), "limit_criterion_sets");
  CriterionReport report;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const FmmSpace& x = seq[n];
    double total = 0.0;
    for (double w : x.weight()) total += w;
    for (std::size_t j = 0; j < delta_grid.size(); ++j) {
      const double delta = delta_grid[j];
      const double bound = h(delta);
      const auto& y = y_sets[n][j];
      check_points(x, y, "limit_criterion_sets");
      std::vector<std::size_t> members;
      for (std::size_t p : y)
        if (x.weight()[p] > 0.0) members.push_back(p);
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      double inside = 0.0;
      for (std::size_t p : members) inside += x.weight()[p];

      bool continuous = true;
      for (std::size_t a = 0; a < members.size() && continuous; ++a)
        for (std::size_t b = a + 1; b < members.size() && continuous; ++b)
          if (x.space()(members[a], members[b]) < delta &&
              x.marks().distance(x.markmap()[members[a]], x.markmap()[members[b]]) > bound + 1e-12)
            continuous = false;
      const bool small_outside = total - inside <= bound + 1e-12;
      report.rows.push_back({n, delta, continuous && small_outside, inside, members.size(), 0.0});
    }
  }
  report.per_delta = pass_shares(report.rows, seq.size(), delta_grid.size());
  report.supported = std::all_of(report.per_delta.begin(), report.per_delta.end(),
                                 [&](double s) { return s >= threshold; });
  return report;
}

double diam_expression(const FmmSpace& x, const std::vector<std::size_t>& z, double delta) {
  std::vector<bool> in_z(x.space().size(), false);
  for (std::size_t p : z) {
    if (p >= x.space().size()) throw std::domain_error("diam_criterion: set refers to a missing point");
    in_z[p] = true;
  }
  std::vector<std::size_t> members;
  double outside = 0.0;
  for (std::size_t p = 0; p < x.space().size(); ++p) {
    if (!(x.weight()[p] > 0.0)) continue;
    if (in_z[p]) members.push_back(p);
    else outside += x.weight()[p];
  }
  const bool interval = !x.marks().is_finite();
  double inner = 0.0;
  std::vector<std::size_t> ball;
  for (std::size_t p : members) {
    ball.clear();
    for (std::size_t q : members)
      if (x.space()(p, q) < delta) ball.push_back(q);
    double diam = 0.0;
    if (interval) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t q : ball) {
        lo = std::min(lo, x.markmap()[q]);
        hi = std::max(hi, x.markmap()[q]);
      }
      diam = hi - lo;
    } else {
      for (std::size_t a = 0; a < ball.size(); ++a)
        for (std::size_t b = a + 1; b < ball.size(); ++b)
          diam = std::max(diam, x.marks().distance(x.markmap()[ball[a]], x.markmap()[ball[b]]));
    }
    inner += x.weight()[p] * std::min(1.0, diam);
  }
  return outside + inner;
}

CriterionReport diam_criterion(const std::vector<FmmSpace>& seq,
                               const std::vector<std::vector<std::vector<std::size_t>>>& z_sets,
                               const std::vector<double>& delta_grid, double zero_tol) {
  if (seq.empty()) throw std::domain_error("diam_criterion: empty sequence");
  if (delta_grid.empty()) throw std::domain_error("diam_criterion: empty delta grid");
  check_shape(z_sets, seq.size(), delta_grid.size(), "diam_criterion");
  CriterionReport report;
  const std::size_t start = tail_start(seq.size());
  report.per_delta.assign(delta_grid.size(), std::numeric_limits<double>::infinity());
  for (std::size_t n = 0; n < seq.size(); ++n)
    for (std::size_t j = 0; j < delta_grid.size(); ++j) {
      const double g = diam_expression(seq[n], z_sets[n][j], delta_grid[j]);
      double zmass = 0.0;
      for (std::size_t p : z_sets[n][j]) zmass += seq[n].weight()[p];
      report.rows.push_back({n, delta_grid[j], g <= zero_tol, zmass, z_sets[n][j].size(), g});
      if (n >= start) report.per_delta[j] = std::min(report.per_delta[j], g);
    }
  const auto finest = std::min_element(delta_grid.begin(), delta_grid.end()) - delta_grid.begin();
  report.supported = report.per_delta[finest] <= zero_tol;
  return report;
}

}  // namespace mmlab
