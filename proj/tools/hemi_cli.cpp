// hemi: command-line front end for hemisphere analysis of point sets on S^N.
//
//   hemi analyze <file> [--tol T] [--seed S] [--json]
//   hemi construct --kind {vandermonde|antipodal} --dim N --points n [--seed S] --out <file>
//   hemi simulate --dim N --points n --trials T [--seed S] [--workers W] [--json] [--no-timing]
//   hemi exact --dim N --points n
//   hemi oracle {sweep|flip} (--file <f> | --angles a1,a2,...)
//
// Exit codes: 0 success, 2 usage or parameter error, 3 geometric precondition
// violated.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hemi/circle_exact.hpp"
#include "hemi/config_io.hpp"
#include "hemi/constructions.hpp"
#include "hemi/hemisphere.hpp"
#include "hemi/montecarlo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitGeometry = 3;

using nlohmann::json;

/// Usage or parameter problem: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }

std::string fmt_vec(std::span<const double> v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(fmt_real(x));
  return fmt::format("[{}]", fmt::join(parts, ", "));
}

json subset_sides_json(const hemi::SubsetSides& s) {
  return json{{"subset", s.subset},
              {"positive", s.sides.positive},
              {"negative", s.sides.negative},
              {"on_circle", s.sides.on_circle}};
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  // Accepts plain integers as well as 1e7-style literals.
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1) || v != std::floor(v) || v > 1.8e19) {
    throw UsageError(fmt::format("{} must be a positive integer, got '{}'", what, text));
  }
  return static_cast<std::uint64_t>(v);
}

// analyze --------------------------------------------------------------------

struct AnalyzeOptions {
  std::string path;
  double tol = hemi::kDefaultTolerance;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_analyze(const AnalyzeOptions& o) {
  std::vector<std::string> warnings;
  std::optional<hemi::Configuration> loaded;
  try {
    loaded = hemi::to_configuration(hemi::read_config(o.path), &warnings);
  } catch (const hemi::ConfigError& e) {
    throw UsageError(e.what());
  }
  const hemi::Configuration& c = *loaded;
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  if (!(o.tol > 0)) throw UsageError("--tol must be positive");

  const std::size_t dim = c.dim();
  const std::size_t n = c.size();
  const auto report = hemi::max_closed_hemisphere(c, o.tol);

  std::optional<hemi::BalanceVerdict> verdict;
  std::optional<hemi::GeneralPositionViolation> gpv;
  try {
    verdict = hemi::is_equator_balanced(c, o.tol);
  } catch (const hemi::GeneralPositionViolation& e) {
    gpv = e;
  }

  hemi::Xoshiro256 rng(o.seed);
  std::optional<hemi::OpenReport> open;
  std::optional<std::string> open_error;
  try {
    open = hemi::best_open_hemisphere(c, rng, o.tol);
  } catch (const hemi::RetriesExhausted& e) {
    open_error = e.what();
  }

  if (o.json) {
    json j;
    j["label"] = c.label() ? json(*c.label()) : json(nullptr);
    j["N"] = dim;
    j["n"] = n;
    j["tol"] = o.tol;
    j["seed"] = o.seed;
    j["closed_bound"] = hemi::closed_bound(dim, n);
    j["max_count"] = report.max_count;
    j["witness_subset"] = report.witness_subset;
    j["witness_pole"] = std::vector<double>(report.witness_pole.coords().begin(), report.witness_pole.coords().end());
    j["degenerate_subsets"] = report.degenerate_subsets;
    if (verdict) {
      j["balanced"] = verdict->balanced;
      j["vacuous"] = verdict->vacuous;
      j["violation"] = verdict->violation ? subset_sides_json(*verdict->violation) : json(nullptr);
      j["general_position_violation"] = nullptr;
    } else {
      j["balanced"] = nullptr;
      j["vacuous"] = false;
      j["violation"] = nullptr;
      j["general_position_violation"] = subset_sides_json({gpv->subset(), gpv->sides()});
    }
    if (open) {
      j["open"] = {{"count", open->count},
                   {"pole", std::vector<double>(open->pole.coords().begin(), open->pole.coords().end())}};
    } else {
      j["open"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (c.label()) fmt::print("label: {}\n", *c.label());
    fmt::print("N: {}\nn: {}\n", dim, n);
    fmt::print("closed_bound: {}\n", hemi::closed_bound(dim, n));
    fmt::print("max_count: {}\n", report.max_count);
    fmt::print("witness_subset: [{}]\n", fmt::join(report.witness_subset, ", "));
    fmt::print("witness_pole: {}\n", fmt_vec(report.witness_pole.coords()));
    fmt::print("degenerate_subsets: {}\n", report.degenerate_subsets);
    if (verdict) {
      fmt::print("balanced: {}\n", verdict->balanced);
      if (verdict->vacuous) fmt::print("vacuous: true (n <= N+1)\n");
      if (verdict->violation) {
        const auto& v = *verdict->violation;
        fmt::print("violation: subset [{}] splits the rest {} / {}\n", fmt::join(v.subset, ", "), v.sides.positive,
                   v.sides.negative);
      }
    } else {
      fmt::print("balanced: n/a (general position violated)\n");
    }
    if (open) {
      fmt::print("open hemisphere count: {}\n", open->count);
      fmt::print("open_pole: {}\n", fmt_vec(open->pole.coords()));
    } else {
      fmt::print("open hemisphere count: n/a\n");
    }
  }

  if (gpv) {
    std::cerr << "error: " << gpv->what() << "\n";
    return kExitGeometry;
  }
  if (open_error) {
    std::cerr << "error: " << *open_error << "\n";
    return kExitGeometry;
  }
  return kExitOk;
}

// construct --------------------------------------------------------------------

struct ConstructOptions {
  std::string kind;
  std::size_t dim = 0;
  std::size_t points = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_construct(const ConstructOptions& o) {
  if (o.dim < 1) throw UsageError("--dim must be >= 1");
  if (o.points < 1) throw UsageError("--points must be >= 1");
  hemi::ConfigFile file;
  if (o.kind == "vandermonde") {
    if (o.points <= o.dim) throw UsageError("vandermonde needs --points > --dim");
    auto v = hemi::vandermonde_config(o.dim, o.points);
    hemi::ConfigMeta meta;
    meta.generator = "vandermonde";
    meta.integers = v.integer_points;
    file = hemi::to_config_file(v.normalized, std::move(meta));
  } else {
    hemi::Xoshiro256 rng(o.seed);
    hemi::ConfigMeta meta;
    meta.seed = o.seed;
    meta.generator = "antipodal";
    file = hemi::to_config_file(hemi::antipodal_config(o.dim, o.points, rng), std::move(meta));
  }
  try {
    hemi::write_config(o.out, file);
  } catch (const hemi::ConfigError& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

// simulate --------------------------------------------------------------------

struct SimulateOptions {
  std::size_t dim = 0;
  std::size_t points = 0;
  std::string trials;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  double tol = hemi::kDefaultTolerance;
  bool json = false;
  bool no_timing = false;
};

int run_simulate(const SimulateOptions& o) {
  if (o.dim < 1) throw UsageError("--dim must be >= 1");
  if (o.points < 1) throw UsageError("--points must be >= 1");
  if (o.workers < 1) throw UsageError("--workers must be >= 1");
  if (!(o.tol > 0)) throw UsageError("--tol must be positive");
  const std::uint64_t trials = parse_count(o.trials, "--trials");
  const auto e = hemi::estimate(o.dim, o.points, trials, o.seed, o.workers, o.tol);

  if (o.json) {
    json j;
    j["N"] = e.dim;
    j["n"] = e.n;
    j["trials"] = e.trials;
    j["successes"] = e.successes;
    j["p_hat"] = e.p_hat;
    j["sigma_p"] = e.sigma_p;
    j["inv_p_hat"] = e.inv_p_hat ? json(*e.inv_p_hat) : json(nullptr);
    j["precision_3sigma"] = e.precision_3sigma ? json(*e.precision_3sigma) : json(nullptr);
    j["seed"] = e.seed;
    if (!o.no_timing) j["elapsed_seconds"] = e.elapsed_seconds;
    std::cout << j.dump(2) << "\n";
  } else {
    fmt::print("# N n trials success 1/p(N,n) precision seed elapsed_s\n");
    fmt::print("{} {} {} {} {} {} {} {}\n", e.dim, e.n, e.trials, e.successes,
               e.inv_p_hat ? fmt_real(*e.inv_p_hat) : "-", e.precision_3sigma ? fmt_real(*e.precision_3sigma) : "-",
               e.seed, o.no_timing ? "-" : fmt::format("{:.3f}", e.elapsed_seconds));
  }
  return kExitOk;
}

// exact --------------------------------------------------------------------

int run_exact(std::size_t dim, std::size_t points) {
  if (dim < 1) throw UsageError("--dim must be >= 1");
  if (points < 1) throw UsageError("--points must be >= 1");
  const auto p = hemi::exact_probability(dim, points);
  fmt::print("{}\n", p ? p->str() : "no closed form known");
  return kExitOk;
}

// oracle --------------------------------------------------------------------

struct OracleOptions {
  std::string mode;
  std::string file;
  std::vector<double> angles;
};

int run_oracle(const OracleOptions& o) {
  std::vector<double> angles;
  if (!o.file.empty()) {
    hemi::ConfigFile f;
    try {
      f = hemi::read_config(o.file);
    } catch (const hemi::ConfigError& e) {
      throw UsageError(e.what());
    }
    if (f.dim != 1) throw UsageError("oracle needs a configuration on S^1 (dim 1)");
    if (f.angles) {
      angles = *f.angles;
    } else {
      const auto c = [&] {
        try {
          return hemi::to_configuration(f);
        } catch (const hemi::ConfigError& e) {
          throw UsageError(e.what());
        }
      }();
      for (std::size_t i = 0; i < c.size(); ++i) angles.push_back(std::atan2(c.point(i)[1], c.point(i)[0]));
    }
  } else {
    angles = o.angles;
  }
  if (angles.empty()) throw UsageError("oracle needs --file or --angles");
  if (o.mode == "flip" && angles.size() > hemi::kFlipEnumerationLimit) {
    throw UsageError(fmt::format("flip enumeration is limited to {} points, got {}", hemi::kFlipEnumerationLimit,
                                 angles.size()));
  }

  std::optional<hemi::CircleConfiguration> circle;
  try {
    circle.emplace(angles);
  } catch (const hemi::NonGeneric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (o.mode == "sweep") {
    const auto s = hemi::sweep_sequence(*circle);
    fmt::print("sequence: [{}]\n", fmt::join(s.counts, ", "));
    fmt::print("balanced: {}\n", hemi::is_balanced_circle(*circle));
  } else {
    const auto count = hemi::flip_enumeration_count(*circle);
    const hemi::ExactProbability ratio(count, hemi::pow2(circle->size()));
    fmt::print("count: {}, ratio: {}\n", count, ratio.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hemisphere analysis of point configurations on the N-sphere"};
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "Best closed/open hemisphere and balance verdict for a configuration");
  a->add_option("file", analyze.path, "Configuration file (JSON)")->required();
  a->add_option("--tol", analyze.tol, "Inner-product tolerance")->capture_default_str();
  a->add_option("--seed", analyze.seed, "Seed for the open-hemisphere pole search")->capture_default_str();
  a->add_flag("--json", analyze.json, "Machine-readable output");

  ConstructOptions construct;
  auto* c = app.add_subcommand("construct", "Write an extremal configuration");
  c->add_option("--kind", construct.kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"vandermonde", "antipodal"}));
  c->add_option("--dim", construct.dim, "Sphere dimension N")->required();
  c->add_option("--points", construct.points, "Number of points n")->required();
  c->add_option("--seed", construct.seed, "Seed (antipodal)")->capture_default_str();
  c->add_option("--out", construct.out, "Output file")->required();

  SimulateOptions simulate;
  auto* s = app.add_subcommand("simulate", "Monte Carlo estimate of p(N,n)");
  s->add_option("--dim", simulate.dim, "Sphere dimension N")->required();
  s->add_option("--points", simulate.points, "Number of points n")->required();
  s->add_option("--trials", simulate.trials, "Number of trials (e.g. 1e7)")->required();
  s->add_option("--seed", simulate.seed, "Seed")->capture_default_str();
  s->add_option("--workers", simulate.workers, "Worker threads")->capture_default_str();
  s->add_option("--tol", simulate.tol, "Inner-product tolerance")->capture_default_str();
  s->add_flag("--json", simulate.json, "Machine-readable output");
  s->add_flag("--no-timing", simulate.no_timing, "Omit elapsed time (byte-reproducible output)");

  std::size_t exact_dim = 0, exact_points = 0;
  auto* e = app.add_subcommand("exact", "Closed-form p(N,n) where known");
  e->add_option("--dim", exact_dim, "Sphere dimension N")->required();
  e->add_option("--points", exact_points, "Number of points n")->required();

  OracleOptions oracle;
  auto* o = app.add_subcommand("oracle", "Circle (N=1) sweep and antipodal-flip oracles");
  o->add_option("mode", oracle.mode, "sweep or flip")->required()->check(CLI::IsMember({"sweep", "flip"}));
  auto* of = o->add_option("--file", oracle.file, "Configuration file on S^1");
  auto* oa = o->add_option("--angles", oracle.angles, "Comma-separated angles in radians")->delimiter(',');
  of->excludes(oa);
  oa->excludes(of);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitUsage;
  }

  try {
    if (*a) return run_analyze(analyze);
    if (*c) return run_construct(construct);
    if (*s) return run_simulate(simulate);
    if (*e) return run_exact(exact_dim, exact_points);
    if (*o) return run_oracle(oracle);
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
