#pragma once

#include <memory>
#include <vector>

#include "mmlab/measures.hpp"
#include "mmlab/mmm_space.hpp"

namespace test {

inline std::shared_ptr<const mmlab::FiniteSpace> space(const std::vector<std::vector<double>>& d) {
  return std::make_shared<const mmlab::FiniteSpace>(d);
}

inline mmlab::FiniteMeasure measure(const std::vector<std::vector<double>>& d, std::vector<double> m) {
  return mmlab::FiniteMeasure(space(d), std::move(m));
}

inline mmlab::MmmSpace mmm(const std::vector<std::vector<double>>& d, std::vector<mmlab::Atom> atoms,
                           mmlab::MarkSpace marks = mmlab::MarkSpace::unit_interval()) {
  return mmlab::MmmSpace(space(d), std::move(marks), std::move(atoms));
}

}  // namespace test
