#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmlab/lambda_measure.hpp"
#include "mmlab/mmm_space.hpp"
#include "mmlab/rng.hpp"

namespace mmlab {

/// Parameters of the Moran model with mutation. Types are indices into a
/// finite alphabet of size q.size(); individuals are 0-based internally.
struct MoranParams {
  int n = 0;
  double gamma = 1.0;  // each ordered pair resamples at rate gamma/2
  double theta = 0.0;  // mutation rate per individual
  std::vector<std::vector<double>> q;  // mutation kernel q(u, .)
  std::vector<double> r0;              // n x n initial distances
  std::vector<int> types0;

  /// r0 = 0, all types 0, q uniform over `alphabet` letters.
  static MoranParams standard(int n, double gamma, double theta, int alphabet = 2);
  /// Throws std::domain_error on any malformed field.
  void validate(bool need_gamma = true) const;
  std::size_t alphabet() const { return q.size(); }
};

struct Event {
  enum class Kind { resample, mutate, block };
  double time = 0.0;
  Kind kind = Kind::resample;
  int source = -1;          // parent (resample, block) or mutant
  int target = -1;          // offspring for resample
  int type = -1;            // new type (mutate) or inherited type
  std::vector<int> block;   // all members of a block event, parent included
};

using EventLog = std::vector<Event>;

/// CSV with columns time,kind,source,target,type; individuals are written
/// 1-based and block members go into `target` separated by ';'.
void write_event_log_csv(std::ostream& out, const EventLog& log);

/// Population state keeping distances as ancestor times:
/// r_t(i,j) = 2 (t - a(i,j)) off the diagonal.
class GenealogyState {
 public:
  GenealogyState(const MoranParams& p);

  int size() const { return n_; }
  double time() const { return t_; }
  const std::vector<int>& types() const { return types_; }
  double distance(int i, int j) const { return i == j ? 0.0 : 2.0 * (t_ - a_[i * n_ + j]); }
  std::vector<double> distance_matrix() const;

  void advance(double t);
  /// Every member of `block` other than `parent` becomes a fresh offspring of
  /// `parent` at the current time.
  void reproduce(int parent, const std::vector<int>& block);
  void mutate(int k, int type) { types_[k] = type; }

  /// (U_N, r_t, uniform 1/N, kappa_t) over the discrete type alphabet.
  FmmSpace snapshot(std::size_t alphabet) const;

 private:
  int n_;
  double t_ = 0.0;
  std::vector<double> a_;
  std::vector<int> types_;
};

struct SimulationResult {
  std::vector<FmmSpace> snapshots;  // one per requested sample time, in the given order
  EventLog log;
};

SimulationResult moran_simulate(const MoranParams& p, double horizon, const std::vector<double>& sample_times,
                                Rng& rng);

/// Lambda-Cannings model; p.gamma is ignored.
SimulationResult cannings_simulate(const MoranParams& p, const LambdaMeasure& lambda, double horizon,
                                   const std::vector<double>& sample_times, Rng& rng);

/// Tracks M_t^{t0}: individuals whose line of descent since t0 carries a
/// mutation.
class MutationSetTracker {
 public:
  explicit MutationSetTracker(int n) : member_(n, false) {}
  void apply(const Event& e);
  bool contains(int k) const { return member_[k]; }
  std::size_t count() const { return count_; }
  std::vector<int> members() const;

 private:
  void set(int k, bool v);
  std::vector<bool> member_;
  std::size_t count_ = 0;
};

struct MutationSetStep {
  double time;
  std::vector<int> members;
};

/// M at t0 (empty) and after each logged event later than t0.
std::vector<MutationSetStep> mutation_set_path(const EventLog& log, double t0, int n);

struct CoalescentSample {
  std::shared_ptr<const FiniteSpace> space;  // leaf distances = time back to the MRCA
  std::vector<double> weight;                // uniform 1/N
  double height = 0.0;
};

CoalescentSample coalescent_sample(int n, const LambdaMeasure& lambda, Rng& rng);

}  // namespace mmlab
