#include "mmlab/cadlag.hpp"

#include <cmath>

namespace mmlab {

double cadlag_modulus(const ScalarPath& path, double delta) {
  return cadlag_modulus(path.time, path.value, [](double u, double v) { return std::abs(u - v); }, delta);
}

}  // namespace mmlab
