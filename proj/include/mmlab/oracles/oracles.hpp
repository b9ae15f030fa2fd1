#pragma once

// Brute-force reference implementations. They are slow on purpose and only
// meant for cross-checking the library on tiny inputs.

#include "mmlab/generator.hpp"
#include "mmlab/measures.hpp"
#include "mmlab/mmm_space.hpp"

namespace mmlab::oracle {

/// Prohorov distance straight from the definition with open neighbourhoods:
/// on each interval between consecutive distinct distances the neighbourhood
/// of every set is fixed, so the infimum is max(d_j, g_j) over intervals,
/// g_j the worst mass defect over all subsets. Support of size <= 20.
double prohorov_direct(const FiniteMeasure& mu1, const FiniteMeasure& mu2);

/// Largest mass of a conflict-free set of support atoms (conflict: r < delta
/// and mark distance > eps + 1e-12), by enumerating all subsets. <= 20 atoms.
double max_retained_mass(const MmmSpace& x, double delta, double eps);

/// Generator of the mutant frequency by listing every (block, parent) outcome
/// and every mutation. N <= 16.
double generator_enumerate(const RealFunction& f, double x, int n, const LambdaMeasure& lambda, double theta);

}  // namespace mmlab::oracle
