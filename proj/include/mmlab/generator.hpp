#pragma once

#include <functional>

#include "mmlab/lambda_measure.hpp"

namespace mmlab {

using RealFunction = std::function<double(double)>;

/// (Omega^N f)(x) for the mutant frequency under Lambda-resampling and
/// mutation at rate theta, by the exact sum over block size k and the number
/// m of mutants in the block. Requires N x to be an integer.
double xi_lambda_generator_apply(const RealFunction& f, double x, int n, const LambdaMeasure& lambda, double theta);

/// The same for the Moran-driven xi: steps +-1/N at the rates of xi_moran_simulate.
double xi_moran_generator_apply(const RealFunction& f, double x, int n, double gamma, double theta);

/// Constant c in |Omega f - theta(1-x) f'| <= x(1-x) |f''| Lambda([0,1]) + c |f''| theta / N.
inline constexpr double kGeneratorRemainderConstant = 0.5;

double generator_drift_bound(double x, int n, double lambda_mass, double theta, double f2_sup);

}  // namespace mmlab
