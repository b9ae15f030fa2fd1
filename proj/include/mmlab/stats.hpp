#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mmlab {

double mean(const std::vector<double>& xs);
/// Standard error of the mean with the n-1 sample variance; 0 for n < 2.
double standard_error(const std::vector<double>& xs);
/// sqrt(p(1-p)/n) for a binomial proportion.
double binomial_stderr(std::size_t successes, std::size_t trials);
/// Wilson score interval at normal quantile z.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Asymptotic 1% critical value 1.628 sqrt((n+m)/(nm)).
double ks_critical_1pct(std::size_t n, std::size_t m);

}  // namespace mmlab
