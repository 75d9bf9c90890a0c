// Command-line front end.
//
// Exit codes: 0 embeddable/valid, 1 not embeddable/invalid, 2 input error.
#include "psembed/psembed.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace psembed;

void print_stats(std::ostream& out, const AlgoStats& s) {
  out << "recursion_nodes " << s.recursion_nodes << "\n"
      << "count_queries " << s.count_queries << "\n"
      << "report_queries " << s.report_queries << "\n"
      << "candidates_checked " << s.candidates_checked << "\n"
      << "binary_search_steps " << s.binary_search_steps << "\n"
      << "max_bisection_steps_node " << s.max_bisection_steps_node << "\n"
      << "candidate_overrun_nodes " << s.candidate_overrun_nodes << "\n";
}

const char* reason_name(NoEmbeddingReason r) {
  switch (r) {
    case NoEmbeddingReason::HullNotThree: return "hull-not-three";
    case NoEmbeddingReason::HullBoundaryOccupied: return "hull-boundary-occupied";
    case NoEmbeddingReason::NoValidRepresentative: return "no-valid-representative";
  }
  return "unknown";
}

void emit_mapping(const Mapping& m, const std::vector<Point>& points, bool as_json,
                  const std::string& mapping_path) {
  const std::string text =
      as_json ? serialize_mapping_json(m, points) : serialize_mapping_text(m, points);
  if (mapping_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(mapping_path);
    if (!out) throw InstanceError("cannot write mapping file: " + mapping_path);
    out << text;
  }
}

int cmd_embed(const std::string& instance_path, const std::string& mode_name,
              const std::string& backend_name, const std::string& svg_path, bool stats,
              bool as_json, const std::string& mapping_path) {
  const InstanceFile inst = load_instance(instance_path);
  const RepTree tree = validate_and_build(inst.graph);
  const EmbedMode mode = mode_name == "baseline" ? EmbedMode::Baseline : EmbedMode::Improved;
  const Backend backend = backend_name == "brute" ? Backend::BruteForce : Backend::Hierarchical;
  const EmbedResult res = embed(tree, inst.points, mode, backend);
  if (stats) print_stats(std::cerr, res.stats);
  if (!res.found()) {
    std::cout << "not embeddable: " << reason_name(*res.reason) << "\n";
    return 1;
  }
  emit_mapping(*res.mapping, inst.points, as_json, mapping_path);
  if (!svg_path.empty()) export_svg(inst.graph, inst.points, &*res.mapping, svg_path);
  return 0;
}

int cmd_embed_general(const std::string& instance_path, const std::string& svg_path, bool stats,
                      bool as_json, const std::string& mapping_path) {
  const InstanceFile inst = load_instance(instance_path);
  const RepTree tree = validate_and_build(inst.graph);
  GeneralEmbedStats gstats;
  const auto mapping = embed_general(tree, inst.points, &gstats);
  if (stats)
    std::cerr << "entries_evaluated " << gstats.entries_evaluated << "\ntriples_tried "
              << gstats.triples_tried << "\n";
  if (!mapping) {
    std::cout << "not embeddable\n";
    return 1;
  }
  emit_mapping(*mapping, inst.points, as_json, mapping_path);
  if (!svg_path.empty()) export_svg(inst.graph, inst.points, &*mapping, svg_path);
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& mapping_path) {
  const InstanceFile inst = load_instance(instance_path);
  const Mapping mapping = load_mapping(mapping_path, inst.points, inst.graph.n);
  const VerifyMode mode = static_cast<int>(inst.points.size()) == inst.graph.n
                              ? VerifyMode::Exact
                              : VerifyMode::Generalized;
  const VerifierReport report = verify(inst.graph, inst.points, mapping, mode);
  if (report.valid) {
    std::cout << "valid\n";
    return 0;
  }
  for (const Violation& v : report.violations) std::cout << "violation: " << v.detail << "\n";
  return 1;
}

int cmd_gen(int n, std::uint64_t seed, bool yes, i64 bound, bool skewed, bool collinear,
            const std::string& out_path) {
  InstanceFile inst;
  if (yes) {
    const YesStyle style = collinear ? YesStyle::WithCollinear
                                     : (skewed ? YesStyle::Skewed : YesStyle::GeneralPosition);
    inst = gen_yes_instance(n, seed, bound, style).instance;
  } else {
    inst.graph = gen_plane3tree(n, seed);
    inst.points = gen_point_set_uniform(n, seed ^ 0x5bf03635ull, bound);
    inst.expected = Expected::Unknown;
  }
  const std::string text = serialize_instance(inst);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InstanceError("cannot write instance file: " + out_path);
    out << text;
  }
  return 0;
}

int cmd_bench(const std::string& suite_path, const std::string& out_path) {
  std::ifstream in(suite_path);
  if (!in) throw InstanceError("cannot open suite file: " + suite_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("suite parse error: ") + e.what());
  }
  BenchConfig config;
  if (j.contains("sizes")) config.sizes = j["sizes"].get<std::vector<int>>();
  if (j.contains("reps")) config.reps = j["reps"].get<int>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("coord_bound")) config.coord_bound = j["coord_bound"].get<i64>();
  if (j.contains("baseline")) config.run_baseline = j["baseline"].get<bool>();
  if (j.contains("improved")) config.run_improved = j["improved"].get<bool>();
  if (j.contains("generalized")) config.run_generalized = j["generalized"].get<bool>();
  if (j.contains("skewed")) config.skewed = j["skewed"].get<bool>();
  if (j.contains("threads")) config.threads = j["threads"].get<int>();
  const BenchReport report = run_bench(config);
  const std::string text = report.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InstanceError("cannot write report file: " + out_path);
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-set embeddability for plane 3-trees"};
  app.require_subcommand(1);

  std::string instance_path, mapping_path, svg_path, out_path, suite_path;
  std::string mode_name = "improved", backend_name = "hier";
  bool stats = false, as_json = false, yes = false, skewed = false, collinear = false;
  int n = 0;
  std::uint64_t seed = 1;
  i64 bound = 1'000'000;

  i64 input_bound = 0;

  auto* embed_cmd = app.add_subcommand("embed", "decide embeddability and print a mapping");
  embed_cmd->add_option("instance", instance_path)->required();
  embed_cmd->add_option("--mode", mode_name)->check(CLI::IsMember({"baseline", "improved"}));
  embed_cmd->add_option("--backend", backend_name)->check(CLI::IsMember({"brute", "hier"}));
  embed_cmd->add_option("--svg", svg_path);
  embed_cmd->add_option("--mapping", mapping_path);
  embed_cmd->add_flag("--stats", stats);
  embed_cmd->add_flag("--json", as_json);
  embed_cmd->add_option("--coord-bound", input_bound, "maximum absolute input coordinate");

  auto* general_cmd = app.add_subcommand("embed-general", "embed on n of k >= n points");
  general_cmd->add_option("instance", instance_path)->required();
  general_cmd->add_option("--svg", svg_path);
  general_cmd->add_option("--mapping", mapping_path);
  general_cmd->add_flag("--stats", stats);
  general_cmd->add_flag("--json", as_json);
  general_cmd->add_option("--coord-bound", input_bound, "maximum absolute input coordinate");

  auto* verify_cmd = app.add_subcommand("verify", "check a mapping against an instance");
  verify_cmd->add_option("instance", instance_path)->required();
  verify_cmd->add_option("mapping", mapping_path)->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--n", n)->required();
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_flag("--yes", yes, "instance embeddable by construction");
  gen_cmd->add_option("--coord-bound", bound);
  gen_cmd->add_flag("--skewed", skewed);
  gen_cmd->add_flag("--collinear", collinear);
  gen_cmd->add_option("--out,-o", out_path);

  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  bench_cmd->add_option("--suite", suite_path)->required();
  bench_cmd->add_option("--out,-o", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (input_bound > 0) set_coord_bound(input_bound);
    if (embed_cmd->parsed())
      return cmd_embed(instance_path, mode_name, backend_name, svg_path, stats, as_json,
                       mapping_path);
    if (general_cmd->parsed())
      return cmd_embed_general(instance_path, svg_path, stats, as_json, mapping_path);
    if (verify_cmd->parsed()) return cmd_verify(instance_path, mapping_path);
    if (gen_cmd->parsed()) return cmd_gen(n, seed, yes, bound, skewed, collinear, out_path);
    if (bench_cmd->parsed()) return cmd_bench(suite_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
