#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphchern/cli_commands.hpp"
#include "graphchern/multigraph.hpp"
#include "graphchern/registry.hpp"

using namespace graphchern;

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for graph polynomials, hypersurface classes, and point counts"};
  app.require_subcommand(1);

  std::string graph_path;
  std::string method = "all";
  std::string edge;
  std::string fixtures_path;
  std::string fixture_name;
  std::vector<long> primes;
  long multi_edge = 0;
  long triple_m = 0;
  bool star = false;
  bool no_fixtures = false;

  CommandOutcome out;
  bool ran = false;
  auto deliver = [&](CommandOutcome o) {
    out = std::move(o);
    ran = true;
  };
  auto run = [&](const std::string& command, auto fn) {
    try {
      deliver(fn());
    } catch (const std::exception& e) {
      deliver(failure_outcome(command, e));
    }
  };
  auto load_registry = [&](Registry& reg) {
    reg.load_file(resolve_fixtures_path(fixtures_path));
  };

  auto* psi = app.add_subcommand("psi", "graph polynomial by one or all methods");
  psi->add_option("graph", graph_path, "graph file, JSON or text")->required();
  psi->add_option("--method", method, "enum | matrixtree | recursion | all (default all)");
  psi->callback([&] {
    run("psi", [&] { return cmd_psi(graph_from_file(graph_path), method); });
  });

  auto* classify = app.add_subcommand("classify", "edge classification and graph shape facts");
  classify->add_option("graph", graph_path, "graph file, JSON or text")->required();
  auto* classify_edge = classify->add_option("--edge", edge, "restrict to one edge");
  classify->callback([&] {
    run("classify", [&] {
      std::optional<std::string> only;
      if (classify_edge->count() > 0) only = edge;
      return cmd_classify(graph_from_file(graph_path), only);
    });
  });

  auto* conditions =
      app.add_subcommand("conditions", "deletion-contraction conditions at a regular edge");
  conditions->add_option("graph", graph_path, "graph file, JSON or text")->required();
  conditions->add_option("--edge", edge, "edge to examine")->required();
  conditions->callback([&] {
    run("conditions", [&] {
      return cmd_conditions(graph_from_file(graph_path), edge, groebner_limits_from_env());
    });
  });

  auto* feynman = app.add_subcommand("feynman", "hypersurface class with derivation trace");
  feynman->add_option("graph", graph_path, "graph file, JSON or text")->required();
  auto* fey_edge = feynman->add_option("--edge", edge, "edge whose multiplicity to raise");
  auto* fey_multi =
      feynman->add_option("--multi-edge", multi_edge, "parallel multiplicity for --edge");
  feynman->add_option("--fixtures", fixtures_path, "fixture registry file");
  feynman->add_flag("--no-fixtures", no_fixtures, "run with an empty registry");
  feynman->callback([&] {
    run("feynman", [&] {
      std::optional<std::string> e;
      std::optional<long> m;
      if (fey_edge->count() > 0) e = edge;
      if (fey_multi->count() > 0) m = multi_edge;
      Registry reg;
      const Registry* rp = nullptr;
      if (!no_fixtures) {
        load_registry(reg);
        rp = &reg;
      }
      return cmd_feynman(graph_from_file(graph_path), rp, e, m);
    });
  });

  auto* count = app.add_subcommand("count", "finite-field zero and complement counts");
  count->add_option("graph", graph_path, "graph file, JSON or text")->required();
  count->add_option("--primes", primes, "primes to count over (default 2 3 5 7)");
  count->callback([&] {
    run("count", [&] {
      return cmd_count(graph_from_file(graph_path), primes, count_options_from_env());
    });
  });

  auto* verify = app.add_subcommand("verify", "counting identities at an edge");
  verify->add_option("graph", graph_path, "graph file, JSON or text")->required();
  verify->add_option("--edge", edge, "edge the identity pivots on")->required();
  verify->add_flag("--star", star, "doubling identity");
  auto* verify_triple =
      verify->add_option("--triple", triple_m, "triple recursion from multiplicity m");
  verify->add_option("--primes", primes, "primes to test (default 2 3 5 7)");
  verify->callback([&] {
    run("verify", [&]() -> CommandOutcome {
      bool triple = verify_triple->count() > 0;
      if (star == triple) {
        throw domain_error("choose exactly one of --star or --triple M");
      }
      Multigraph g = graph_from_file(graph_path);
      if (star) return cmd_verify_star(g, edge, primes, count_options_from_env());
      return cmd_verify_triple(g, edge, triple_m, primes, count_options_from_env());
    });
  });

  auto* fixtures = app.add_subcommand("fixtures", "inspect the fixture registry");
  fixtures->require_subcommand(1);
  auto* fx_list = fixtures->add_subcommand("list", "all fixtures, one summary line each");
  fx_list->add_option("--fixtures", fixtures_path, "fixture registry file");
  fx_list->callback([&] {
    run("fixtures", [&] {
      Registry reg;
      load_registry(reg);
      return cmd_fixtures_list(reg);
    });
  });
  auto* fx_show = fixtures->add_subcommand("show", "every stored field of one fixture");
  fx_show->add_option("name", fixture_name, "fixture name")->required();
  fx_show->add_option("--fixtures", fixtures_path, "fixture registry file");
  fx_show->callback([&] {
    run("fixtures", [&] {
      Registry reg;
      load_registry(reg);
      return cmd_fixtures_show(reg, fixture_name);
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (!ran) return kExitUsage;
  std::cout << out.report << "\n";
  return out.exit_code;
}
