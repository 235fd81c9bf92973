// Command-line front end: generate spaces, validate them, compute GH / mGH
// distances, run the relaxation heuristic, build epsilon-nets and run
// experiment manifests.
//
// Exit codes: 0 success (exact), 1 usage, validation error or failed
// experiment assertion, 2 result only bracketed because a search budget ran out.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ghm/audit.hpp"
#include "ghm/constructions.hpp"
#include "ghm/experiment.hpp"
#include "ghm/io.hpp"
#include "ghm/relaxation.hpp"
#include "ghm/simplex.hpp"
#include "ghm/solvers.hpp"

namespace fs = std::filesystem;
using ghm::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

struct Common {
  std::optional<std::uint64_t> budget_nodes;
  std::optional<double> time_limit;
  double tolerance = ghm::kDefaultMetricTolerance;
  std::uint64_t seed = 0;
  std::string format = "json";
  bool coordinates = false;

  ghm::SolverBudget budget() const {
    ghm::SolverBudget b;
    b.max_nodes = budget_nodes;
    b.time_limit = time_limit;
    return b;
  }
};

void add_budget(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget-nodes", c.budget_nodes, "Node limit for each search")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--time-limit", c.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
}

void add_input(CLI::App* cmd, Common& c) {
  cmd->add_option("--tolerance", c.tolerance, "Relative slack for the metric axioms")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--coordinates", c.coordinates,
                "Read CSV inputs as point coordinates (Euclidean distances)");
}

ghm::FiniteMetricSpace load(const std::string& path, const Common& c) {
  if (c.coordinates && ghm::format_for(path) == ghm::SpaceFormat::Csv)
    return ghm::space_from_coordinates_csv(ghm::read_text(path), c.tolerance);
  return ghm::read_space(path, c.tolerance);
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int status_of(std::initializer_list<const ghm::DistanceResult*> results) {
  for (const auto* r : results)
    if (r && !r->exact) return kExitBudget;
  return kExitOk;
}

// Pair kinds write <stem>_x<ext> and <stem>_y<ext>.
std::vector<fs::path> output_paths(const fs::path& out, std::size_t count) {
  if (count == 1) return {out};
  const auto ext = out.extension().string();
  const auto stem = (out.parent_path() / out.stem()).string();
  return {stem + "_x" + ext, stem + "_y" + ext};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gromov-Hausdorff and modified Gromov-Hausdorff distances of finite metric spaces"};
  app.require_subcommand(1);
  Common c;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a space (or pair of spaces)");
  std::string kind;
  std::string spec_file;
  std::string gen_out;
  ghm::SpaceSpec spec;
  gen->add_option("--kind", kind,
                  "simplex | u_sequence | union_sum | counterexample_pair | tight_pair | "
                  "random_metric | random_ultrametric");
  gen->add_option("--spec", spec_file, "JSON space spec {\"kind\", \"params\"}");
  gen->add_option("--n", spec.n, "Number of points / pair index");
  gen->add_option("--m", spec.m, "Simplex size");
  gen->add_option("--k", spec.k, "Sequence index");
  gen->add_option("--diam", spec.diam, "Diameter");
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("--out,-o", gen_out, "Output file (stdout when omitted)");
  gen->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  // validate
  auto* validate = app.add_subcommand("validate", "Check the metric axioms of a space file");
  std::string validate_path;
  validate->add_option("space", validate_path)->required();
  add_input(validate, c);

  // dist
  auto* dist = app.add_subcommand("dist", "Exact GH / mGH distance between two spaces");
  std::string x_path, y_path, dist_kind = "both";
  dist->add_option("x", x_path)->required();
  dist->add_option("y", y_path)->required();
  dist->add_option("--kind", dist_kind)->check(CLI::IsMember({"gh", "mgh", "both"}));
  add_budget(dist, c);
  add_input(dist, c);

  // simplex-dist
  auto* sdist = app.add_subcommand("simplex-dist", "GH / mGH distance to a regular simplex");
  std::string sx_path;
  std::size_t simplex_m = 1;
  double simplex_diam = 1.0;
  sdist->add_option("x", sx_path)->required();
  sdist->add_option("--m", simplex_m, "Simplex size")->required()->check(CLI::PositiveNumber);
  sdist->add_option("--diam", simplex_diam, "Simplex diameter")
      ->required()
      ->check(CLI::PositiveNumber);
  add_budget(sdist, c);
  add_input(sdist, c);

  // relax
  auto* relax = app.add_subcommand("relax", "Relaxation heuristic for the best map X -> Y");
  std::string rx_path, ry_path;
  ghm::RelaxConfig rc;
  relax->add_option("x", rx_path)->required();
  relax->add_option("y", ry_path)->required();
  relax->add_option("--seed", rc.seed, "Random seed for the restarts");
  relax->add_option("--restarts", rc.restarts)->check(CLI::PositiveNumber);
  relax->add_option("--iterations", rc.max_iters)->check(CLI::PositiveNumber);
  relax->add_option("--p", rc.p, "Exponent of the smooth surrogate")->check(CLI::Range(1.0, 64.0));
  add_input(relax, c);

  // net
  auto* net = app.add_subcommand("net", "Greedy epsilon-net of a space");
  std::string net_path, net_out;
  double epsilon = 0.0;
  net->add_option("space", net_path)->required();
  net->add_option("--epsilon", epsilon)->required()->check(CLI::NonNegativeNumber);
  net->add_option("--out,-o", net_out, "Write the net subspace to this file");
  net->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  add_input(net, c);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment manifest");
  std::string manifest_path, record_out;
  experiment->add_option("manifest", manifest_path)->required();
  experiment->add_option("--out,-o", record_out, "Record path (overrides the manifest)");
  add_budget(experiment, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gen) {
      if (kind.empty() == spec_file.empty()) {
        std::cerr << "gen: give exactly one of --kind or --spec\n";
        return kExitError;
      }
      if (!spec_file.empty()) {
        spec = ghm::spec_from_json(json::parse(ghm::read_text(spec_file)));
      } else {
        spec.kind = ghm::parse_space_kind(kind);
      }
      if (gen->count("--seed")) spec.seed = c.seed;
      const auto spaces = ghm::generate(spec);
      const auto format = ghm::parse_format(c.format);
      if (gen_out.empty()) {
        for (const auto& s : spaces) std::cout << ghm::serialize_space(s, format);
      } else {
        const auto paths = output_paths(gen_out, spaces.size());
        for (std::size_t i = 0; i < spaces.size(); ++i) {
          ghm::write_space(paths[i], spaces[i], format);
          std::cerr << "wrote " << paths[i].string() << '\n';
        }
      }
      return kExitOk;
    }

    if (*validate) {
      try {
        const auto x = load(validate_path, c);
        const auto ultra = ghm::is_ultrametric(x);
        print({{"valid", true},
               {"n", x.size()},
               {"diameter", x.diameter()},
               {"integral", x.integral()},
               {"ultrametric", ultra.ultrametric}});
        return kExitOk;
      } catch (const ghm::MetricError& e) {
        print({{"valid", false},
               {"violation", ghm::to_string(e.kind())},
               {"witness", e.witness()},
               {"message", e.what()}});
        return kExitError;
      }
    }

    if (*dist) {
      const auto x = load(x_path, c);
      const auto y = load(y_path, c);
      std::optional<ghm::DistanceResult> gh, mgh;
      json out;
      if (dist_kind != "gh") {
        mgh = ghm::exact_mgh(x, y, c.budget());
        out["mgh"] = ghm::result_to_json(*mgh);
      }
      if (dist_kind != "mgh") {
        gh = ghm::exact_gh(x, y, c.budget());
        out["gh"] = ghm::result_to_json(*gh);
      }
      print(dist_kind == "both" ? out : out.begin().value());
      return status_of({gh ? &*gh : nullptr, mgh ? &*mgh : nullptr});
    }

    if (*sdist) {
      const auto x = load(sx_path, c);
      const auto gh = ghm::gh_to_simplex(x, simplex_m, simplex_diam, c.budget());
      const auto mgh = ghm::mgh_to_simplex(x, simplex_m, simplex_diam, c.budget());
      print({{"gh", ghm::result_to_json(gh)}, {"mgh", ghm::result_to_json(mgh)}});
      return status_of({&gh, &mgh});
    }

    if (*relax) {
      const auto x = load(rx_path, c);
      const auto y = load(ry_path, c);
      print(ghm::relax_to_json(ghm::relax_mgh_direction(x, y, rc)));
      return kExitOk;
    }

    if (*net) {
      const auto x = load(net_path, c);
      const auto result = ghm::greedy_epsilon_net(x, epsilon);
      if (!net_out.empty())
        ghm::write_space(net_out, x.subspace(result.indices), ghm::parse_format(c.format));
      print(ghm::net_to_json(result, x));
      return kExitOk;
    }

    if (*experiment) {
      auto manifest = ghm::load_manifest(manifest_path);
      if (c.budget_nodes) manifest.budget.max_nodes = c.budget_nodes;
      if (c.time_limit) manifest.budget.time_limit = c.time_limit;
      const auto record = ghm::run_experiment(manifest);
      std::cout << ghm::record_table(record);
      std::optional<fs::path> out = manifest.output;
      if (!record_out.empty()) out = record_out;
      if (out) {
        ghm::write_text(*out, ghm::record_to_json(record).dump(2) + "\n");
        std::cerr << "wrote " << out->string() << '\n';
      }
      return record.passed() ? kExitOk : kExitError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
