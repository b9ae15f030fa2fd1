#pragma once

#include <cstdint>
#include <vector>

#include "mmlab/genealogy.hpp"

namespace mmlab {

enum class PipelineModel { moran, cannings };

struct PipelineConfig {
  PipelineModel model = PipelineModel::moran;
  MoranParams params;
  LambdaMeasure lambda = LambdaMeasure::kingman();  // cannings only
  std::vector<double> delta_grid{0.1};
  double horizon = 1.0;
  double eps = 0.25;
  std::size_t replicas = 500;
  /// Times per window [i delta/2, (i+1) delta/2) at which the type check runs.
  int checks_per_window = 3;
};

struct PipelineDeltaReport {
  double delta = 0.0;
  double a = 0.0;      // sqrt(2 T C delta / eps)
  double bound = 0.0;  // 2 T C delta a^-2
  std::size_t exceedances = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t pair_checks = 0;
  std::size_t violations = 0;  // pairs in Y closer than delta with different types
  bool pass = false;
};

struct PipelineReport {
  double constant = 0.0;  // C
  std::vector<PipelineDeltaReport> per_delta;
  bool pass = false;
};

/// The h = 0 core of the mark-function argument: per window, Y is the
/// complement of the mutation set started half a window earlier. Replica i
/// uses replica_seed(seed, i).
PipelineReport markfn_pipeline(const PipelineConfig& cfg, std::uint64_t seed, unsigned threads = 0);

}  // namespace mmlab
