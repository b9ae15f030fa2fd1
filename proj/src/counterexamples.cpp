#include "mmlab/counterexamples.hpp"

#include <cmath>
#include <stdexcept>

namespace mmlab {

MmmSpace counterexample_square(int resolution) {
  if (resolution < 1) throw std::domain_error("counterexample: resolution must be at least 1");
  const std::size_t res = static_cast<std::size_t>(resolution);
  std::vector<std::pair<double, double>> coords;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < res; ++i)
    for (std::size_t j = 0; j < res; ++j) {
      coords.emplace_back((i + 0.5) / res, (j + 0.5) / res);
      labels.push_back("sq" + std::to_string(i) + "_" + std::to_string(j));
    }
  for (std::size_t j = 0; j < res; ++j) {
    coords.emplace_back(2.0 + (j + 0.5) / res, 0.0);
    labels.push_back("seg" + std::to_string(j));
  }
  const std::size_t n = coords.size();
  std::vector<double> d(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      d[a * n + b] = std::hypot(coords[a].first - coords[b].first, coords[a].second - coords[b].second);

  const double cell = 0.25 / static_cast<double>(res * res);
  std::vector<Atom> atoms;
  for (std::size_t p = 0; p < res * res; ++p) {
    atoms.push_back({p, 0.0, cell});
    atoms.push_back({p, 1.0, cell});
  }
  for (std::size_t j = 0; j < res; ++j) atoms.push_back({res * res + j, 0.0, 0.5 / res});
  return MmmSpace(std::make_shared<const FiniteSpace>(std::move(labels), std::move(d)), MarkSpace::discrete(2),
                  std::move(atoms));
}

MmmSpace counterexample_ultrametric(int depth) {
  if (depth < 1) throw std::domain_error("counterexample: resolution must be at least 1");
  std::vector<std::vector<int>> words;
  std::vector<std::string> labels;
  auto enumerate = [&](int base, int offset) {
    std::size_t count = 1;
    for (int i = 0; i < depth; ++i) count *= static_cast<std::size_t>(base);
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<int> w(depth);
      std::size_t rest = c;
      for (int i = depth - 1; i >= 0; --i) {
        w[i] = offset + static_cast<int>(rest % base);
        rest /= base;
      }
      std::string label;
      for (int digit : w) label += static_cast<char>('0' + digit);
      words.push_back(std::move(w));
      labels.push_back(std::move(label));
    }
    return count;
  };
  const std::size_t na = enumerate(3, 0);
  const std::size_t nb = enumerate(2, 3);
  const std::size_t n = na + nb;

  std::vector<double> scale(depth + 1);
  for (int i = 1; i <= depth; ++i) scale[i] = std::exp(-static_cast<double>(i));
  std::vector<double> d(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      int first = 0;
      while (first < depth && words[a][first] == words[b][first]) ++first;
      const double v = first < depth ? scale[first + 1] : 0.0;
      d[a * n + b] = d[b * n + a] = v;
    }

  std::vector<Atom> atoms;
  atoms.reserve(2 * na + nb);
  const double ma = 0.25 / static_cast<double>(na);
  for (std::size_t p = 0; p < na; ++p) {
    atoms.push_back({p, 0.0, ma});
    atoms.push_back({p, 1.0, ma});
  }
  for (std::size_t p = 0; p < nb; ++p) atoms.push_back({na + p, 0.0, 0.5 / static_cast<double>(nb)});
  return MmmSpace(std::make_shared<const FiniteSpace>(std::move(labels), std::move(d)), MarkSpace::discrete(2),
                  std::move(atoms));
}

MmmSpace counterexample(CounterexampleKind kind, int resolution) {
  return kind == CounterexampleKind::square ? counterexample_square(resolution)
                                            : counterexample_ultrametric(resolution);
}

CounterexampleKind parse_counterexample_kind(const std::string& name) {
  if (name == "square") return CounterexampleKind::square;
  if (name == "ultrametric") return CounterexampleKind::ultrametric;
  throw std::invalid_argument("unknown counterexample kind '" + name + "' (expected square or ultrametric)");
}

}  // namespace mmlab
