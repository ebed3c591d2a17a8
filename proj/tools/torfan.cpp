// Command-line surface for the toric-arrangement pipeline: subdivide an
// arrangement's fan, verify property (E), and emit strata posets,
// building/nested sets, blowup schedules and Betti numbers.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "torfan/torfan.hpp"

namespace {

using torfan::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw torfan::ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw torfan::ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw torfan::Error("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2)); }

struct CommonArgs {
  std::string input;
  std::string fan;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;
};

torfan::StrataPoset poset_from_args(const CommonArgs& args) {
  torfan::Fan f = torfan::fan_from_json(read_json_file(args.fan));
  torfan::Arrangement a = torfan::arrangement_from_json(read_json_file(args.input));
  return torfan::build_strata_poset(f, a);
}

int run_subdivide(const CommonArgs& args, const std::string& start_fan_path,
                  const std::string& trace_path) {
  torfan::Arrangement a = torfan::arrangement_from_json(read_json_file(args.input));
  torfan::Fan start(0);
  std::vector<torfan::IntVec> xi;
  if (start_fan_path.empty()) {
    if (torfan::xi_of(a).empty()) {
      // No characters constrain anything; keep the ambient orthant fan.
      write_json(args.output, torfan::fan_to_json(torfan::make_orthant_fan(a.rank)));
      if (!trace_path.empty()) write_json(trace_path, torfan::json::array());
      return 0;
    }
    auto [reduced, basis] = torfan::reduce_span(a);
    start = torfan::make_orthant_fan(reduced.rank);
    xi = torfan::xi_of(reduced);
  } else {
    start = torfan::fan_from_json(read_json_file(start_fan_path));
    if (start.rank() != a.rank)
      throw torfan::ParseError("start fan rank differs from arrangement rank");
    xi = torfan::xi_of(a);
  }
  auto [fan, trace] = torfan::resolve_all(start, xi);
  write_json(args.output, torfan::fan_to_json(fan));
  if (!trace_path.empty()) write_json(trace_path, torfan::trace_to_json(trace));
  return 0;
}

int run_verify(const CommonArgs& args, const std::string& base_path) {
  torfan::Fan f = torfan::fan_from_json(read_json_file(args.fan));
  torfan::Arrangement a = torfan::arrangement_from_json(read_json_file(args.input));
  std::optional<torfan::Fan> base;
  if (!base_path.empty()) base = torfan::fan_from_json(read_json_file(base_path));
  torfan::VerifyReport rep =
      torfan::verify_fan_for_arrangement(f, a, base ? &*base : nullptr);

  json layers = json::array();
  for (const auto& lc : rep.layers) {
    json jl{{"property_E", lc.property_e}};
    if (lc.witness) {
      json w = json::array();
      for (const auto& r : *lc.witness) w.push_back(torfan::detail::vec_to_json(r));
      jl["witness_cone"] = w;
    }
    layers.push_back(std::move(jl));
  }
  json out{{"fan_valid", rep.fan_valid},
           {"smooth", rep.smooth},
           {"layers", layers},
           {"ok", rep.ok()}};
  if (!rep.fan_problem.empty()) out["fan_problem"] = rep.fan_problem;
  if (rep.subdivides_base) {
    out["subdivides_base"] = *rep.subdivides_base;
    if (!rep.base_problem.empty()) out["base_problem"] = rep.base_problem;
  }
  write_json(args.output, out);
  return rep.ok() ? 0 : 1;
}

int run_strata(const CommonArgs& args) {
  torfan::StrataPoset p = poset_from_args(args);
  if (args.format == "dot")
    write_text(args.output, torfan::poset_to_dot(p));
  else
    write_json(args.output, torfan::poset_to_json(p));
  return 0;
}

int run_building(const CommonArgs& args) {
  torfan::StrataPoset p = poset_from_args(args);
  write_json(args.output, torfan::building_to_json(p, torfan::minimal_building_set(p)));
  return 0;
}

int run_nested(const CommonArgs& args, std::size_t cap) {
  torfan::StrataPoset p = poset_from_args(args);
  std::vector<int> g = torfan::minimal_building_set(p);
  auto families = torfan::nested_sets(p, g, cap);
  if (args.format == "dot")
    write_text(args.output, torfan::nested_complex_to_dot(families));
  else
    write_json(args.output, torfan::nested_to_json(p, g, families));
  return 0;
}

int run_schedule(const CommonArgs& args) {
  torfan::StrataPoset p = poset_from_args(args);
  std::vector<int> g = torfan::minimal_building_set(p);
  write_json(args.output, torfan::schedule_to_json(p, torfan::blowup_schedule(p, g)));
  return 0;
}

int run_betti(const CommonArgs& args) {
  torfan::Fan f = torfan::fan_from_json(read_json_file(args.input));
  write_json(args.output, torfan::betti_to_json(torfan::betti_numbers(f)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fan subdivision and stratification for toric arrangements"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string start_fan_path, trace_path, base_path;
  std::size_t nested_cap = 20;

  auto add_common = [&](CLI::App* cmd, bool needs_fan, bool needs_input) {
    if (needs_input) cmd->add_option("--input", args.input, "input file")->required();
    if (needs_fan) cmd->add_option("--fan", args.fan, "fan JSON file")->required();
    cmd->add_option("--output", args.output, "output file (default stdout)");
    cmd->add_option("--format", args.format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    cmd->add_option("--seed", args.seed, "seed for property sampling");
  };

  CLI::App* subdivide = app.add_subcommand("subdivide", "resolve an arrangement's characters");
  add_common(subdivide, false, true);
  subdivide->add_option("--start-fan", start_fan_path,
                        "start from this fan instead of the orthant fan of the reduced span");
  subdivide->add_option("--trace", trace_path, "write the move trace to this file");

  CLI::App* verify = app.add_subcommand("verify", "check a fan against an arrangement");
  add_common(verify, true, true);
  verify->add_option("--base", base_path, "also check that the fan subdivides this base fan");

  add_common(app.add_subcommand("strata", "stratification poset of the compactification"),
             true, true);
  add_common(app.add_subcommand("building", "minimal building set of the strata poset"), true,
             true);
  CLI::App* nested = app.add_subcommand("nested", "nested sets of the minimal building set");
  add_common(nested, true, true);
  nested->add_option("--cap", nested_cap, "enumeration cap on the building set size");
  add_common(app.add_subcommand("schedule", "blowup schedule of the minimal building set"),
             true, true);
  add_common(app.add_subcommand("betti", "Betti numbers of a smooth complete fan"), false,
             true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (subdivide->parsed()) return run_subdivide(args, start_fan_path, trace_path);
    if (verify->parsed()) return run_verify(args, base_path);
    if (app.get_subcommand("strata")->parsed()) return run_strata(args);
    if (app.get_subcommand("building")->parsed()) return run_building(args);
    if (nested->parsed()) return run_nested(args, nested_cap);
    if (app.get_subcommand("schedule")->parsed()) return run_schedule(args);
    if (app.get_subcommand("betti")->parsed()) return run_betti(args);
  } catch (const torfan::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const torfan::ZeroCharacterError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const torfan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
