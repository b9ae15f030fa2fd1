// Command-line front end for the mmlab library.
//
// Settings are resolved in the order defaults < --config file < MMLAB_*
// environment variables < explicit flags. Exit codes: 0 success, 1 a check
// or acceptance criterion failed, 2 invalid input or usage, 3 a request beyond
// what an exact routine supports (rerun with --approx where offered).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmlab/acceptance.hpp"
#include "mmlab/counterexamples.hpp"
#include "mmlab/criteria.hpp"
#include "mmlab/csv.hpp"
#include "mmlab/errors.hpp"
#include "mmlab/genealogy.hpp"
#include "mmlab/mark_diagnostics.hpp"
#include "mmlab/parallel.hpp"
#include "mmlab/pipeline.hpp"
#include "mmlab/serialization.hpp"
#include "mmlab/stats.hpp"
#include "mmlab/xi_process.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace mmlab;

namespace {

enum class Kind { number, integer, text, list, files };

struct ParamSpec {
  std::string key;
  Kind kind;
  json fallback;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  bool stochastic;
  std::size_t default_replicas;
  std::vector<ParamSpec> params;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs{
      {"prohorov", "Prohorov distance of the measures of two space files sharing points and distances", false, 1,
       {{"files", Kind::files, json::array(), "two space files"}, {"tol", Kind::number, 1e-9, "bisection tolerance"}}},
      {"mgp", "Certified upper bound on the marked Gromov-Prohorov distance", true, 1,
       {{"files", Kind::files, json::array(), "two space files"},
        {"budget", Kind::integer, 20, "coordinate-descent sweeps"},
        {"tol", Kind::number, 1e-9, "Prohorov tolerance"}}},
      {"beta", "The beta functional of a space file", false, 1, {{"files", Kind::files, json::array(), "one space file"}}},
      {"membership", "Membership tests H, D, M and M_h", false, 1,
       {{"files", Kind::files, json::array(), "one space file"},
        {"kind", Kind::text, "M", "H, D, M or Mh"},
        {"delta", Kind::number, 0.1, "distance threshold"},
        {"eps", Kind::number, 0.1, "mark / mass threshold"},
        {"slope", Kind::number, 1.0, "slope of the linear modulus (H, Mh)"},
        {"grid_k", Kind::integer, 10, "Mh checks delta = 2^-1 .. 2^-grid_k"}}},
      {"criteria", "Limit criteria on a sequence of space files", false, 1,
       {{"files", Kind::files, json::array(), "space files, in sequence order"},
        {"criterion", Kind::text, "theorem", "theorem or diam"},
        {"slope", Kind::number, 1.0, "slope of the linear modulus (theorem)"},
        {"deltas", Kind::list, json::array({0.5, 0.25, 0.125, 0.0625}), "delta grid"},
        {"threshold", Kind::number, 0.5, "pass share over the last half (theorem)"},
        {"zero_tol", Kind::number, 0.05, "tolerance for g -> 0 (diam)"}}},
      {"counterexample", "Write a space without a mark function", false, 1,
       {{"kind", Kind::text, "square", "square or ultrametric"}, {"resolution", Kind::integer, 4, "grid size or depth"}}},
      {"moran", "Tree-valued Moran model with mutation", true, 1,
       {{"N", Kind::integer, 50, "population size"},
        {"gamma", Kind::number, 1.0, "resampling rate"},
        {"theta", Kind::number, 0.5, "mutation rate"},
        {"T", Kind::number, 1.0, "horizon"},
        {"samples", Kind::list, json::array({0.25, 0.5, 0.75, 1.0}), "snapshot times"},
        {"alphabet", Kind::integer, 2, "number of types"}}},
      {"cannings", "Lambda-Cannings model with mutation", true, 1,
       {{"N", Kind::integer, 50, "population size"},
        {"lambda", Kind::text, "kingman", "kingman, uniform[:scale], dirac:y[:mass], joined by +"},
        {"theta", Kind::number, 0.5, "mutation rate"},
        {"T", Kind::number, 1.0, "horizon"},
        {"samples", Kind::list, json::array({0.25, 0.5, 0.75, 1.0}), "snapshot times"},
        {"alphabet", Kind::integer, 2, "number of types"}}},
      {"coalescent", "Lambda-coalescent trees", true, 100,
       {{"N", Kind::integer, 10, "number of leaves"}, {"lambda", Kind::text, "kingman", "as for cannings"}}},
      {"verify-mutbound", "Monte-Carlo check of the mutant-frequency tail bound", true, 2000,
       {{"N", Kind::integer, 200, "population size"},
        {"gamma", Kind::number, 1.0, "resampling rate"},
        {"theta", Kind::number, 0.5, "mutation rate"},
        {"delta", Kind::number, 0.1, "time window"},
        {"a", Kind::number, 0.5, "level"}}},
      {"pipeline", "Mark-function pipeline (h = 0 core) on Moran or Cannings replicas", true, 500,
       {{"model", Kind::text, "moran", "moran or cannings"},
        {"N", Kind::integer, 200, "population size"},
        {"gamma", Kind::number, 1.0, "resampling rate (moran)"},
        {"lambda", Kind::text, "kingman", "Lambda (cannings)"},
        {"theta", Kind::number, 0.5, "mutation rate"},
        {"T", Kind::number, 1.0, "horizon"},
        {"deltas", Kind::list, json::array({0.1}), "delta grid"},
        {"eps", Kind::number, 0.25, "target exceedance probability"},
        {"checks", Kind::integer, 3, "type checks per window"}}},
      {"acceptance", "Run an acceptance suite: metric, diagnostics, genealogy or all", true, 1,
       {{"suite", Kind::text, "all", "suite name"}}},
  };
  return specs;
}

const CommandSpec& command_spec(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown command '" + name + "'");
}

struct Context {
  std::string command;
  json params;
  std::optional<std::uint64_t> seed;
  std::size_t replicas = 1;
  fs::path out = "mmlab-out";
  bool plot = false;
  bool approx = false;

  std::string hash() const {
    json h{{"command", command}, {"params", params}, {"replicas", replicas}, {"approx", approx}};
    h["seed"] = seed ? json(*seed) : json(nullptr);
    return fnv1a_hex(h.dump());
  }

  double number(const std::string& key) const {
    const auto& v = params.at(key);
    if (!v.is_number()) throw std::invalid_argument("parameter '" + key + "' must be a number");
    return v.get<double>();
  }
  long integer(const std::string& key) const {
    const auto& v = params.at(key);
    if (!v.is_number_integer()) throw std::invalid_argument("parameter '" + key + "' must be an integer");
    return v.get<long>();
  }
  std::string text(const std::string& key) const {
    const auto& v = params.at(key);
    if (!v.is_string()) throw std::invalid_argument("parameter '" + key + "' must be a string");
    return v.get<std::string>();
  }
  std::vector<double> list(const std::string& key) const {
    const auto& v = params.at(key);
    if (!v.is_array() || v.empty()) throw std::invalid_argument("parameter '" + key + "' must be a nonempty list");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw std::invalid_argument("parameter '" + key + "' must list numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  std::vector<std::string> files(std::size_t at_least, std::size_t at_most) const {
    const auto& v = params.at("files");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.get<std::string>());
    if (out.size() < at_least || out.size() > at_most)
      throw std::invalid_argument(command + ": expected " +
                                  (at_least == at_most ? std::to_string(at_least) : "at least " + std::to_string(at_least)) +
                                  " space file(s), got " + std::to_string(out.size()));
    return out;
  }
  std::uint64_t require_seed() const {
    if (!seed) throw std::invalid_argument(command + " is stochastic: pass --seed (or MMLAB_SEED / config seed)");
    return *seed;
  }

  void write(const std::string& name, const CsvTable& table) const {
    fs::create_directories(out);
    table.write((out / name).string(), hash());
  }
};

json parse_value(const std::string& raw, Kind kind, const std::string& key) {
  try {
    switch (kind) {
      case Kind::number:
        return std::stod(raw);
      case Kind::integer: {
        std::size_t used = 0;
        const long v = std::stol(raw, &used);
        if (used != raw.size()) throw std::invalid_argument("trailing characters");
        return v;
      }
      case Kind::text:
        return raw;
      case Kind::list: {
        json arr = json::array();
        std::stringstream ss(raw);
        for (std::string item; std::getline(ss, item, ',');)
          if (!item.empty()) arr.push_back(std::stod(item));
        return arr;
      }
      case Kind::files:
        break;
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse '" + raw + "' for --" + key);
  }
  return raw;
}

LambdaMeasure parse_lambda(const std::string& spec) {
  std::optional<LambdaMeasure> total;
  std::stringstream ss(spec);
  for (std::string term; std::getline(ss, term, '+');) {
    std::vector<std::string> parts;
    std::stringstream ts(term);
    for (std::string p; std::getline(ts, p, ':');) parts.push_back(p);
    if (parts.empty()) throw std::invalid_argument("empty Lambda term in '" + spec + "'");
    LambdaMeasure l;
    try {
      if (parts[0] == "kingman" && parts.size() == 1) l = LambdaMeasure::kingman();
      else if (parts[0] == "uniform" && parts.size() <= 2) l = LambdaMeasure::uniform(parts.size() == 2 ? std::stod(parts[1]) : 1.0);
      else if (parts[0] == "dirac" && (parts.size() == 2 || parts.size() == 3))
        l = LambdaMeasure::dirac(std::stod(parts[1]), parts.size() == 3 ? std::stod(parts[2]) : 1.0);
      else throw std::invalid_argument("bad term");
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cannot parse Lambda term '" + term + "'");
    }
    total = total ? *total + l : l;
  }
  if (!total) throw std::invalid_argument("empty Lambda specification");
  return *total;
}

std::string show(double v) { return format_number(v); }
std::string show(std::size_t v) { return std::to_string(v); }

FmmSpace as_fmm(const MmmSpace& x, const std::string& file) {
  std::vector<double> weight(x.space().size(), 0.0), kappa(x.space().size(), 0.0);
  std::vector<bool> seen(x.space().size(), false);
  for (const Atom& a : x.atoms()) {
    if (!(a.mass > 0.0)) continue;
    if (seen[a.point] && kappa[a.point] != a.mark)
      throw std::invalid_argument(file + ": point " + x.space().labels()[a.point] + " carries two marks, not an fmm-space");
    seen[a.point] = true;
    kappa[a.point] = a.mark;
    weight[a.point] += a.mass;
  }
  return FmmSpace(x.space_ptr(), x.marks(), weight, kappa);
}

int cmd_prohorov(const Context& ctx) {
  const auto files = ctx.files(2, 2);
  const MmmSpace a = load_space(files[0]), b = load_space(files[1]);
  if (!(a.space() == b.space()) || !(a.marks() == b.marks()))
    throw std::invalid_argument("prohorov: both files must share points, distances and marks");
  // The measures live on points x marks with r + d.
  std::vector<std::pair<std::size_t, double>> nodes;
  std::vector<double> m1, m2;
  auto add = [&](const Atom& at, std::vector<double>& into) {
    std::size_t i = 0;
    while (i < nodes.size() && !(nodes[i].first == at.point && nodes[i].second == at.mark)) ++i;
    if (i == nodes.size()) {
      nodes.emplace_back(at.point, at.mark);
      m1.push_back(0.0);
      m2.push_back(0.0);
    }
    into[i] += at.mass;
  };
  for (const Atom& at : a.atoms())
    if (at.mass > 0.0) add(at, m1);
  for (const Atom& at : b.atoms())
    if (at.mass > 0.0) add(at, m2);
  const std::size_t n = nodes.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = i == j ? 0.0 : a.space()(nodes[i].first, nodes[j].first) + a.marks().distance(nodes[i].second, nodes[j].second);
  auto space = std::make_shared<const FiniteSpace>(FiniteSpace::with_default_labels(std::move(d), n));
  const double tol = ctx.number("tol");
  const auto r = prohorov_distance(FiniteMeasure(space, m1), FiniteMeasure(space, m2), tol);
  std::cout << show(r.distance) << "\n";
  CsvTable t({"distance", "tol", "witness_mass"});
  t.add_row({show(r.distance), show(tol), show(r.witness.total())});
  ctx.write("prohorov.csv", t);
  return 0;
}

int cmd_mgp(const Context& ctx) {
  const auto files = ctx.files(2, 2);
  const MmmSpace a = load_space(files[0]), b = load_space(files[1]);
  Rng rng = replica_rng(ctx.require_seed(), 0);
  const auto r = mgp_upper(a, b, static_cast<int>(ctx.integer("budget")), rng, ctx.number("tol"));
  std::cout << show(r.bound) << "\n";
  CsvTable t({"bound", "sweeps"});
  t.add_row({show(r.bound), show(r.sweeps)});
  ctx.write("mgp.csv", t);
  CsvTable cross({"x", "y", "rho"});
  const std::size_t n2 = b.space().size();
  for (std::size_t i = 0; i < r.cross.size(); ++i)
    cross.add_row({a.space().labels()[i / n2], b.space().labels()[i % n2], show(r.cross[i])});
  ctx.write("mgp_cross.csv", cross);
  return 0;
}

int cmd_beta(const Context& ctx) {
  const auto file = ctx.files(1, 1).front();
  const double b = beta(load_space(file));
  std::cout << show(b) << "\n";
  CsvTable t({"file", "beta"});
  t.add_row({fs::path(file).filename().string(), show(b)});
  ctx.write("beta.csv", t);
  return 0;
}

int cmd_membership(const Context& ctx) {
  const MmmSpace x = load_space(ctx.files(1, 1).front());
  const std::string kind = ctx.text("kind");
  const double delta = ctx.number("delta"), eps = ctx.number("eps");
  CsvTable t({"kind", "delta", "eps", "verdict", "retained_mass", "witness_size", "approximate"});
  MembershipReport r;
  if (kind == "H") r = in_H(x, Modulus::linear(ctx.number("slope")));
  else if (kind == "D") r = in_D(x, delta, eps);
  else if (kind == "M") r = in_M(x, delta, eps, ctx.approx);
  else if (kind == "Mh") {
    const bool v = in_Mh(x, Modulus::linear(ctx.number("slope")), dyadic_grid(static_cast<int>(ctx.integer("grid_k"))), ctx.approx);
    std::cout << "verdict=" << (v ? "true" : "false") << "\n";
    t.add_row({kind, "", "", v ? "1" : "0", "", "", ctx.approx ? "1" : "0"});
    ctx.write("membership.csv", t);
    return 0;
  } else {
    throw std::invalid_argument("membership: kind must be H, D, M or Mh");
  }
  std::cout << "verdict=" << (r.verdict ? "true" : "false") << " retained_mass=" << show(r.retained_mass)
            << " witness_size=" << r.retained.size() << (r.approximate ? " approximate" : "") << "\n";
  if (r.violation)
    std::cout << "violating pair: atoms " << r.violation->a << " and " << r.violation->b << " (r=" << show(r.violation->r)
              << ", d=" << show(r.violation->d) << ")\n";
  t.add_row({kind, show(delta), show(eps), r.verdict ? "1" : "0", show(r.retained_mass), show(r.retained.size()),
             r.approximate ? "1" : "0"});
  ctx.write("membership.csv", t);
  return 0;
}

int cmd_criteria(const Context& ctx) {
  const auto files = ctx.files(1, 100000);
  const auto deltas = ctx.list("deltas");
  const std::string which = ctx.text("criterion");
  CriterionReport rep;
  if (which == "theorem") {
    std::vector<MmmSpace> seq;
    for (const auto& f : files) seq.push_back(load_space(f));
    rep = limit_criterion_theorem(seq, Modulus::linear(ctx.number("slope")), deltas, ctx.number("threshold"), ctx.approx);
  } else if (which == "diam") {
    std::vector<FmmSpace> seq;
    std::vector<std::vector<std::vector<std::size_t>>> z;
    for (const auto& f : files) {
      seq.push_back(as_fmm(load_space(f), f));
      std::vector<std::size_t> all(seq.back().space().size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      z.emplace_back(deltas.size(), all);
    }
    rep = diam_criterion(seq, z, deltas, ctx.number("zero_tol"));
  } else {
    throw std::invalid_argument("criteria: criterion must be theorem or diam");
  }
  CsvTable t({"n", "delta", "verdict", "retained_mass", "witness_size", "g"});
  for (const auto& r : rep.rows)
    t.add_row({show(r.n), show(r.delta), r.verdict ? "1" : "0", show(r.retained_mass), show(r.witness_size),
               which == "diam" ? show(r.value) : ""});
  ctx.write("criteria.csv", t);
  for (std::size_t j = 0; j < deltas.size(); ++j)
    std::cout << "delta=" << show(deltas[j]) << (which == "diam" ? " liminf_g=" : " pass_share=") << show(rep.per_delta[j]) << "\n";
  std::cout << (rep.supported ? "supported" : "not supported") << " (finite-prefix evidence)\n";
  if (ctx.plot) {
    PlotSeries s{which == "diam" ? "liminf g" : "pass share", deltas, rep.per_delta};
    write_svg_plot((ctx.out / "criteria.svg").string(), "criterion " + which, "delta", s.name, {s});
  }
  return 0;
}

int cmd_counterexample(const Context& ctx) {
  const std::string kind = ctx.text("kind");
  const long res = ctx.integer("resolution");
  const MmmSpace x = counterexample(parse_counterexample_kind(kind), static_cast<int>(res));
  fs::create_directories(ctx.out);
  const fs::path path = ctx.out / ("counterexample_" + kind + "_" + std::to_string(res) + ".mmm");
  save_space(x, path);
  std::cout << path.string() << "\n";
  CsvTable t({"kind", "resolution", "points", "atoms", "beta"});
  t.add_row({kind, std::to_string(res), show(x.space().size()), show(x.atoms().size()), show(beta(x))});
  ctx.write("counterexample.csv", t);
  return 0;
}

MoranParams population(const Context& ctx, double gamma) {
  return MoranParams::standard(static_cast<int>(ctx.integer("N")), gamma, ctx.number("theta"),
                               static_cast<int>(ctx.integer("alphabet")));
}

double mean_distance(const FmmSpace& s) {
  const std::size_t n = s.space().size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += s.space()(i, j);
  return sum / (n * (n - 1) / 2.0);
}

int run_population(const Context& ctx, bool cannings) {
  const std::uint64_t seed = ctx.require_seed();
  const MoranParams p = population(ctx, cannings ? 1.0 : ctx.number("gamma"));
  const std::optional<LambdaMeasure> lambda = cannings ? std::optional(parse_lambda(ctx.text("lambda"))) : std::nullopt;
  const double horizon = ctx.number("T");
  const auto samples = ctx.list("samples");
  auto simulate = [&](std::size_t i) {
    Rng rng = replica_rng(seed, i);
    return cannings ? cannings_simulate(p, *lambda, horizon, samples, rng) : moran_simulate(p, horizon, samples, rng);
  };
  const auto runs = parallel_replicas(ctx.replicas, 0, simulate);

  const std::string model = cannings ? "cannings" : "moran";
  fs::create_directories(ctx.out);
  {
    std::ostringstream log;
    write_event_log_csv(log, runs.front().log);
    std::ofstream f(ctx.out / (model + "_events.csv"), std::ios::binary);
    f << log.str() << "# config_hash=" << ctx.hash() << "\n";
  }
  for (std::size_t j = 0; j < samples.size(); ++j)
    save_space(runs.front().snapshots[j].to_mmm(), ctx.out / (model + "_snapshot_" + std::to_string(j) + ".mmm"));

  CsvTable t({"replica", "sample_time", "events", "mean_distance", "distinct_types", "ultrametric"});
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const FmmSpace& s = runs[i].snapshots[j];
      std::vector<double> types = s.markmap();
      std::sort(types.begin(), types.end());
      const auto distinct = static_cast<std::size_t>(std::unique(types.begin(), types.end()) - types.begin());
      t.add_row({show(i), show(samples[j]), show(runs[i].log.size()), show(mean_distance(s)), show(distinct),
                 s.space().is_ultrametric(1e-12) ? "1" : "0"});
    }
  ctx.write(model + ".csv", t);
  std::cout << model << ": " << runs.size() << " replica(s), " << runs.front().log.size()
            << " events in replica 0; tables in " << ctx.out.string() << "\n";
  if (ctx.plot) {
    PlotSeries s{"replica 0", samples, {}};
    for (const auto& snap : runs.front().snapshots) s.y.push_back(mean_distance(snap));
    write_svg_plot((ctx.out / (model + ".svg")).string(), model + " mean pairwise distance", "time", "mean r", {s});
  }
  return 0;
}

int cmd_coalescent(const Context& ctx) {
  const std::uint64_t seed = ctx.require_seed();
  const int n = static_cast<int>(ctx.integer("N"));
  const LambdaMeasure lambda = parse_lambda(ctx.text("lambda"));
  const auto trees = parallel_replicas(ctx.replicas, 0, [&](std::size_t i) {
    Rng rng = replica_rng(seed, i);
    return coalescent_sample(n, lambda, rng);
  });
  CsvTable t({"replica", "height", "mean_pair_distance", "ultrametric"});
  std::vector<double> heights;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto& s = *trees[i].space;
    double sum = 0.0;
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) sum += s(a, b);
    heights.push_back(trees[i].height);
    t.add_row({show(i), show(trees[i].height), show(sum / (s.size() * (s.size() - 1) / 2.0)),
               s.is_ultrametric(1e-12) ? "1" : "0"});
  }
  ctx.write("coalescent.csv", t);
  const auto dust = dust_free_diagnostic(lambda);
  std::cout << "mean height " << show(mean(heights)) << " +- " << show(standard_error(heights)) << " (stderr)\n";
  std::cout << "integral of y^-1 Lambda(dy): " << (dust.divergent ? "divergent (dust-free)" : show(dust.integral)) << "\n";
  const auto& first = trees.front();
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < first.weight.size(); ++i) atoms.push_back({i, 0.0, first.weight[i]});
  save_space(MmmSpace(first.space, MarkSpace::discrete(1), atoms), ctx.out / "coalescent_tree_0.mmm");
  return 0;
}

int cmd_mutbound(const Context& ctx) {
  const std::uint64_t seed = ctx.require_seed();
  const auto r = mutbound_verify(static_cast<int>(ctx.integer("N")), ctx.number("gamma"), ctx.number("theta"),
                                 ctx.number("delta"), ctx.number("a"), ctx.replicas, seed);
  std::cout << (r.pass ? "PASS" : "FAIL") << " estimate=" << show(r.estimate) << " stderr=" << show(r.stderr_)
            << " wilson95=[" << show(r.ci_low) << ", " << show(r.ci_high) << "] bound=" << show(r.bound) << "\n";
  CsvTable t({"replica", "sup_xi", "exceeded"});
  const double a = ctx.number("a");
  for (std::size_t i = 0; i < r.sup_values.size(); ++i)
    t.add_row({show(i), show(r.sup_values[i]), r.sup_values[i] >= a ? "1" : "0"});
  ctx.write("mutbound.csv", t);
  if (ctx.plot) {
    std::vector<double> xs = r.sup_values, ys;
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(static_cast<double>(i + 1) / xs.size());
    write_svg_plot((ctx.out / "mutbound.svg").string(), "empirical CDF of sup xi", "sup xi", "F", {{"replicas", xs, ys}});
  }
  return r.pass ? 0 : 1;
}

int cmd_pipeline(const Context& ctx) {
  const std::uint64_t seed = ctx.require_seed();
  PipelineConfig cfg;
  const std::string model = ctx.text("model");
  if (model == "moran") cfg.model = PipelineModel::moran;
  else if (model == "cannings") cfg.model = PipelineModel::cannings;
  else throw std::invalid_argument("pipeline: model must be moran or cannings");
  cfg.params = MoranParams::standard(static_cast<int>(ctx.integer("N")), ctx.number("gamma"), ctx.number("theta"), 2);
  cfg.lambda = parse_lambda(ctx.text("lambda"));
  cfg.delta_grid = ctx.list("deltas");
  cfg.horizon = ctx.number("T");
  cfg.eps = ctx.number("eps");
  cfg.replicas = ctx.replicas;
  cfg.checks_per_window = static_cast<int>(ctx.integer("checks"));
  const auto rep = markfn_pipeline(cfg, seed);
  CsvTable t({"delta", "a", "bound", "exceedances", "estimate", "stderr", "pair_checks", "violations", "pass"});
  for (const auto& d : rep.per_delta) {
    t.add_row({show(d.delta), show(d.a), show(d.bound), show(d.exceedances), show(d.estimate), show(d.stderr_),
               show(d.pair_checks), show(d.violations), d.pass ? "1" : "0"});
    std::cout << (d.pass ? "PASS" : "FAIL") << " delta=" << show(d.delta) << " violations=" << d.violations
              << " exceedance=" << show(d.estimate) << " bound=" << show(d.bound) << "\n";
  }
  ctx.write("pipeline.csv", t);
  if (ctx.plot) {
    PlotSeries est{"estimate", {}, {}}, bnd{"bound", {}, {}};
    for (const auto& d : rep.per_delta) {
      est.x.push_back(d.delta);
      est.y.push_back(d.estimate);
      bnd.x.push_back(d.delta);
      bnd.y.push_back(d.bound);
    }
    write_svg_plot((ctx.out / "pipeline.svg").string(), "exceedance vs bound", "delta", "probability", {est, bnd});
  }
  return rep.pass ? 0 : 1;
}

int cmd_acceptance(const Context& ctx) {
  AcceptanceOptions opts;
  opts.seed = ctx.require_seed();
  opts.out_dir = ctx.out.string();
  opts.progress = &std::cout;
  const auto results = run_acceptance(ctx.text("suite"), opts);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass();
  std::cout << (ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << "\n";
  return ok ? 0 : 1;
}

int dispatch(const Context& ctx) {
  const std::string& c = ctx.command;
  if (c == "prohorov") return cmd_prohorov(ctx);
  if (c == "mgp") return cmd_mgp(ctx);
  if (c == "beta") return cmd_beta(ctx);
  if (c == "membership") return cmd_membership(ctx);
  if (c == "criteria") return cmd_criteria(ctx);
  if (c == "counterexample") return cmd_counterexample(ctx);
  if (c == "moran") return run_population(ctx, false);
  if (c == "cannings") return run_population(ctx, true);
  if (c == "coalescent") return cmd_coalescent(ctx);
  if (c == "verify-mutbound") return cmd_mutbound(ctx);
  if (c == "pipeline") return cmd_pipeline(ctx);
  if (c == "acceptance") return cmd_acceptance(ctx);
  throw std::invalid_argument("unknown command '" + c + "'");
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

std::uint64_t parse_seed(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  throw std::invalid_argument("seed must be a nonnegative integer");
}

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  try {
    const auto v = std::stoull(s, &used);
    if (used == s.size() && s.find('-') == std::string::npos) return v;
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument("seed must be a nonnegative integer, got '" + s + "'");
}

std::size_t parse_replicas(const std::string& s) {
  std::size_t used = 0;
  try {
    const long v = std::stol(s, &used);
    if (used == s.size() && v >= 1) return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument("replicas must be a positive integer, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmlab: marked metric measure spaces, mark-function diagnostics and genealogy simulators"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  std::string config_path, seed_flag, replicas_flag, out_flag;
  bool plot = false, approx = false;
  auto* o_config = app.add_option("--config", config_path, "JSON config (see docs/config.schema.json)");
  auto* o_seed = app.add_option("--seed", seed_flag, "root seed (required by stochastic commands)");
  auto* o_replicas = app.add_option("--replicas", replicas_flag, "number of replicas");
  auto* o_out = app.add_option("--out", out_flag, "output directory (default mmlab-out)");
  auto* o_plot = app.add_flag("--plot", plot, "also write SVG plots");
  auto* o_approx = app.add_flag("--approx", approx, "allow the greedy fallback in membership tests");
  for (auto* o : {o_config, o_seed, o_replicas, o_out}) o->configurable(false);
  (void)o_config;

  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  std::map<std::string, std::vector<std::string>> positional;
  std::map<std::string, CLI::Option*> positional_opt;
  for (const auto& spec : commands()) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    for (const auto& p : spec.params) {
      if (p.kind == Kind::files) {
        positional_opt[spec.name] = sub->add_option("files", positional[spec.name], p.help);
      } else if (spec.name == "acceptance" && p.key == "suite") {
        opts[spec.name][p.key] = sub->add_option("suite", raw[spec.name][p.key], p.help);
      } else {
        opts[spec.name][p.key] = sub->add_option("--" + p.key, raw[spec.name][p.key], p.help + " (default " + p.fallback.dump() + ")");
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n" << app.help();
    return 2;
  }

  try {
    json file_cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::invalid_argument("cannot read config file " + config_path);
      try {
        f >> file_cfg;
      } catch (const json::exception& e) {
        throw std::invalid_argument("config file " + config_path + ": " + e.what());
      }
      if (!file_cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
      for (const auto& [k, v] : file_cfg.items())
        if (k != "command" && k != "params" && k != "seed" && k != "replicas" && k != "out" && k != "plot" && k != "approx")
          throw std::invalid_argument("config file: unknown key '" + k + "'");
    }

    Context ctx;
    const auto subs = app.get_subcommands();
    if (!subs.empty()) ctx.command = subs.front()->get_name();
    else if (file_cfg.contains("command")) ctx.command = file_cfg["command"].get<std::string>();
    else {
      std::cerr << "error: no command given\n\n" << app.help();
      return 2;
    }
    const CommandSpec& spec = command_spec(ctx.command);

    // defaults < file < flags for command parameters
    ctx.params = json::object();
    for (const auto& p : spec.params) ctx.params[p.key] = p.fallback;
    if (file_cfg.contains("params")) {
      if (!file_cfg["params"].is_object()) throw std::invalid_argument("config file: params must be an object");
      for (const auto& [k, v] : file_cfg["params"].items()) {
        if (!ctx.params.contains(k)) throw std::invalid_argument("config file: '" + k + "' is not a parameter of " + ctx.command);
        ctx.params[k] = v;
      }
    }
    for (const auto& p : spec.params) {
      if (p.kind == Kind::files) {
        if (positional_opt[spec.name]->count() > 0) ctx.params["files"] = positional[spec.name];
      } else if (opts[spec.name][p.key]->count() > 0) {
        ctx.params[p.key] = parse_value(raw[spec.name][p.key], p.kind, p.key);
      }
    }

    // defaults < file < environment < flags for the global settings
    ctx.replicas = spec.default_replicas;
    if (file_cfg.contains("seed")) ctx.seed = parse_seed(file_cfg["seed"]);
    if (file_cfg.contains("replicas")) {
      const auto& r = file_cfg["replicas"];
      if (!r.is_number_integer() || r.get<long long>() < 1) throw std::invalid_argument("replicas must be a positive integer");
      ctx.replicas = r.get<std::size_t>();
    }
    if (file_cfg.contains("out")) ctx.out = file_cfg["out"].get<std::string>();
    if (file_cfg.contains("plot")) ctx.plot = file_cfg["plot"].get<bool>();
    if (file_cfg.contains("approx")) ctx.approx = file_cfg["approx"].get<bool>();
    if (auto v = env("MMLAB_SEED")) ctx.seed = parse_seed(*v);
    if (auto v = env("MMLAB_REPLICAS")) ctx.replicas = parse_replicas(*v);
    if (auto v = env("MMLAB_OUT")) ctx.out = *v;
    if (o_seed->count() > 0) ctx.seed = parse_seed(seed_flag);
    if (o_replicas->count() > 0) ctx.replicas = parse_replicas(replicas_flag);
    if (o_out->count() > 0) ctx.out = out_flag;
    if (o_plot->count() > 0) ctx.plot = plot;
    if (o_approx->count() > 0) ctx.approx = approx;

    return dispatch(ctx);
  } catch (const capability_error& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
