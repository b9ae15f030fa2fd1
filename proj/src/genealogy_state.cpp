#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "mmlab/genealogy.hpp"

namespace mmlab {

MoranParams MoranParams::standard(int n, double gamma, double theta, int alphabet) {
  if (n < 1 || alphabet < 1) throw std::domain_error("MoranParams: need N >= 1 and a nonempty alphabet");
  MoranParams p;
  p.n = n;
  p.gamma = gamma;
  p.theta = theta;
  p.q.assign(alphabet, std::vector<double>(alphabet, 1.0 / alphabet));
  p.r0.assign(static_cast<std::size_t>(n) * n, 0.0);
  p.types0.assign(n, 0);
  return p;
}

void MoranParams::validate(bool need_gamma) const {
  if (n < 1) throw std::domain_error("MoranParams: N must be positive");
  if (need_gamma && !(gamma > 0.0)) throw std::domain_error("MoranParams: gamma must be positive");
  if (!(theta >= 0.0)) throw std::domain_error("MoranParams: theta must be nonnegative");
  if (q.empty()) throw std::domain_error("MoranParams: empty mutation kernel");
  for (const auto& row : q) {
    if (row.size() != q.size()) throw std::domain_error("MoranParams: mutation kernel must be square");
    double s = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw std::domain_error("MoranParams: mutation kernel entries must be nonnegative");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-9) throw std::domain_error("MoranParams: mutation kernel rows must sum to 1");
  }
  if (r0.size() != static_cast<std::size_t>(n) * n) throw std::domain_error("MoranParams: r0 must be N x N");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = r0[i * n + j];
      if (!(v >= 0.0) || v != r0[j * n + i] || (i == j && v != 0.0))
        throw std::domain_error("MoranParams: r0 must be a symmetric nonnegative matrix with zero diagonal");
    }
  if (types0.size() != static_cast<std::size_t>(n)) throw std::domain_error("MoranParams: one initial type per individual");
  for (int u : types0)
    if (u < 0 || static_cast<std::size_t>(u) >= q.size()) throw std::domain_error("MoranParams: initial type out of range");
}

void write_event_log_csv(std::ostream& out, const EventLog& log) {
  out << "time,kind,source,target,type\n";
  char buf[40];
  for (const Event& e : log) {
    std::snprintf(buf, sizeof buf, "%.17g", e.time);
    out << buf << ',';
    switch (e.kind) {
      case Event::Kind::resample:
        out << "resample," << e.source + 1 << ',' << e.target + 1 << ',' << e.type << '\n';
        break;
      case Event::Kind::mutate:
        out << "mutate," << e.source + 1 << ",," << e.type << '\n';
        break;
      case Event::Kind::block: {
        out << "block," << e.source + 1 << ',';
        for (std::size_t i = 0; i < e.block.size(); ++i) out << (i ? ";" : "") << e.block[i] + 1;
        out << ',' << e.type << '\n';
        break;
      }
    }
  }
}

GenealogyState::GenealogyState(const MoranParams& p) : n_(p.n), a_(p.r0.size()), types_(p.types0) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = -0.5 * p.r0[i];
}

std::vector<double> GenealogyState::distance_matrix() const {
  std::vector<double> d(a_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) d[i * n_ + j] = distance(i, j);
  return d;
}

void GenealogyState::advance(double t) {
  if (t < t_) throw std::domain_error("GenealogyState: time cannot go backwards");
  t_ = t;
}

void GenealogyState::reproduce(int parent, const std::vector<int>& block) {
  std::vector<bool> in_block(n_, false);
  for (int k : block) in_block[k] = true;
  for (int k : block) {
    if (k == parent) continue;
    for (int j = 0; j < n_; ++j) {
      if (in_block[j]) continue;
      a_[k * n_ + j] = a_[j * n_ + k] = a_[parent * n_ + j];
    }
    types_[k] = types_[parent];
  }
  for (int k : block)
    for (int j : block)
      if (k != j) a_[k * n_ + j] = t_;
}

FmmSpace GenealogyState::snapshot(std::size_t alphabet) const {
  std::vector<std::string> labels(n_);
  for (int i = 0; i < n_; ++i) labels[i] = std::to_string(i + 1);
  std::vector<double> marks(types_.begin(), types_.end());
  return FmmSpace(std::make_shared<const FiniteSpace>(std::move(labels), distance_matrix()),
                  MarkSpace::discrete(alphabet), std::vector<double>(n_, 1.0 / n_), std::move(marks));
}

void MutationSetTracker::set(int k, bool v) {
  if (member_[k] == v) return;
  member_[k] = v;
  count_ += v ? 1 : -1;
}

void MutationSetTracker::apply(const Event& e) {
  switch (e.kind) {
    case Event::Kind::mutate:
      set(e.source, true);
      break;
    case Event::Kind::resample:
      set(e.target, member_[e.source]);
      break;
    case Event::Kind::block: {
      const bool carried = member_[e.source];
      for (int k : e.block)
        if (k != e.source) set(k, carried);
      break;
    }
  }
}

std::vector<int> MutationSetTracker::members() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < member_.size(); ++k)
    if (member_[k]) out.push_back(static_cast<int>(k));
  return out;
}

std::vector<MutationSetStep> mutation_set_path(const EventLog& log, double t0, int n) {
  if (n < 1) throw std::domain_error("mutation_set_path: N must be positive");
  MutationSetTracker tracker(n);
  std::vector<MutationSetStep> path{{t0, {}}};
  for (const Event& e : log) {
    if (e.time <= t0) continue;
    tracker.apply(e);
    path.push_back({e.time, tracker.members()});
  }
  return path;
}

}  // namespace mmlab
