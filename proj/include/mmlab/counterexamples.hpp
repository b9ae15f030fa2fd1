#pragma once

#include <string>

#include "mmlab/mmm_space.hpp"

namespace mmlab {

enum class CounterexampleKind { square, ultrametric };

/// [0,1]^2 on a res x res grid of cell centres (mass 1/2 in total, marks 0
/// and 1 with equal weight) plus res points of the segment [2,3] x {0}
/// (mass 1/2, mark 0). Euclidean distances.
MmmSpace counterexample_square(int resolution);

/// A = {0,1,2}^depth and B = {3,4}^depth with r(x,y) = e^{-n} for the first
/// index n >= 1 where x and y differ. A carries mass 1/2 split evenly over
/// marks 0 and 1; B carries mass 1/2 with mark 0. The distance matrix has
/// (3^depth + 2^depth)^2 entries, so depth 8 needs about 370 MB.
MmmSpace counterexample_ultrametric(int depth);

MmmSpace counterexample(CounterexampleKind kind, int resolution);

CounterexampleKind parse_counterexample_kind(const std::string& name);

}  // namespace mmlab
