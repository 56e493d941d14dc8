// conemorse: scenario-driven front end.
//
//   conemorse <geodesics|flow|morse|develop-svg> --scenario FILE [--out DIR]
//             [--seed N] [--samples N] [--rips-scale X]
//
// Exit codes: 0 ok, 1 internal error, 2 invalid scenario, 3 Morse relation
// violated, 4 I/O failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "conemorse/geodesics.hpp"
#include "conemorse/morse.hpp"
#include "conemorse/pipeline.hpp"
#include "conemorse/report.hpp"
#include "conemorse/scenario.hpp"

namespace cm = conemorse;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kViolation = 3, kIo = 4 };

struct Common {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> rips_scale;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "scenario file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output directory (default: scenario 'out' or .)");
  cmd->add_option("--seed", c.seed, "override the scenario seed");
  cmd->add_option("--samples", c.samples, "override the sample count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rips-scale", c.rips_scale, "override the Rips scale")
      ->check(CLI::PositiveNumber);
}

std::filesystem::path out_dir(const Common& c, const cm::Scenario& s) {
  if (!c.out.empty()) return c.out;
  return s.out.value_or(".");
}

int run_geodesics(const cm::Scenario& s, const std::filesystem::path& dir) {
  const auto set = cm::enumerate_all(s.surface(), s.p(), s.q());
  std::cout << cm::geodesic_table_pretty(set);
  if (set.has_ties()) std::cout << "note: tied energies present\n";
  cm::write_text(dir / "geodesics.tsv", cm::geodesic_table(set));
  cm::write_text(dir / "geodesics.json", cm::geodesics_report(s, set));
  return kOk;
}

int run_flow(const cm::Scenario& s, const std::filesystem::path& dir) {
  const auto set = cm::enumerate_all(s.surface(), s.p(), s.q());
  const auto flows = cm::run_flows(s.surface(), s.p(), s.q(), set, s.flow_plan());
  std::cout << "basin histogram (" << flows.records.size() << " samples):\n";
  for (std::size_t g = 0; g < set.geodesics.size(); ++g) {
    std::printf("  %-14s E = %10.6f  hits = %d\n", cm::to_string(set.geodesics[g].kind).c_str(),
                set.geodesics[g].energy, flows.basin_hits[g]);
  }
  std::cout << "unresolved = " << flows.unresolved << ", unconverged = " << flows.unconverged
            << ", monotone = " << (flows.all_monotone() ? "yes" : "NO") << '\n';
  if (flows.unresolved > 0) std::cerr << "warning: " << flows.unresolved << " limits unresolved\n";
  if (flows.unconverged > 0) {
    std::cerr << "warning: " << flows.unconverged << " flows hit max_iter\n";
  }
  cm::write_text(dir / "flow.tsv", cm::flow_table(flows));
  cm::write_text(dir / "flow.json", cm::flow_report(s, set, flows));
  return kOk;
}

int run_morse(const cm::Scenario& s, const std::filesystem::path& dir) {
  const auto complex = cm::build_sampled_complex(s.surface(), s.p(), s.q(), s.complex_options());
  const auto rep = cm::morse_relation_check(complex.input, s.name, s.eps);
  std::cout << cm::morse_summary(complex, rep, s.merge_window);
  cm::write_text(dir / "morse.json", cm::morse_report(s, complex, rep));
  if (!rep.relation.holds()) {
    std::cerr << "error: Morse relation violated: " << rep.relation.violation << '\n';
    return kViolation;
  }
  return kOk;
}

int run_svg(const cm::Scenario& s, const std::filesystem::path& dir) {
  const auto set = cm::enumerate_all(s.surface(), s.p(), s.q());
  cm::write_text(dir / "develop.svg", cm::develop_svg(s, set));
  std::cout << "wrote " << (dir / "develop.svg").string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics, discrete flows and Morse relations on a Euclidean cone"};
  app.require_subcommand(1);
  Common c;
  auto* geo = app.add_subcommand("geodesics", "enumerate classical and broken geodesics");
  auto* flow = app.add_subcommand("flow", "flow perturbed paths and classify the limits");
  auto* morse = app.add_subcommand("morse", "indices, multiplicities and the Morse relation");
  auto* svg = app.add_subcommand("develop-svg", "draw the developed sector");
  for (auto* cmd : {geo, flow, morse, svg}) add_common(cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    cm::Scenario s = cm::load_scenario(c.scenario);
    if (c.seed) s.seed = *c.seed;
    if (c.samples) (flow->parsed() ? s.flow_samples : s.samples) = *c.samples;
    if (c.rips_scale) s.rips_scale = *c.rips_scale;
    const auto dir = out_dir(c, s);
    if (geo->parsed()) return run_geodesics(s, dir);
    if (flow->parsed()) return run_flow(s, dir);
    if (morse->parsed()) return run_morse(s, dir);
    return run_svg(s, dir);
  } catch (const cm::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    // GeometryError, PathError, MorseError (dirty strip) all derive from it.
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const cm::ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
