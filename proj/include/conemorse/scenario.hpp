#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conemorse/cone_geometry.hpp"
#include "conemorse/morse.hpp"
#include "conemorse/path_space.hpp"
#include "conemorse/pipeline.hpp"

namespace conemorse {

/// Carries "file:line: message" so load errors point at the offending line.
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name;
  double alpha = 0.0;
  double p_r = 0.0, p_theta = 0.0;
  double q_r = 0.0, q_theta = 0.0;

  int segments = 64;
  FlowOptions flow;
  int samples = 600;       // vertex-routed samples for the complex
  int flow_samples = 200;  // perturbed starts for the flow report
  std::uint64_t seed = 1;
  double amplitude = 0.25;
  double energy_tol = 1e-4;
  std::optional<double> rips_scale;
  // eps_fractions (relative to each level's clean radius) or eps (absolute).
  EpsRule eps;
  double merge_window = 0.2;
  std::optional<std::filesystem::path> out;

  ConeSurface surface() const { return ConeSurface(alpha); }
  ConePoint p() const;
  ConePoint q() const;
  ComplexOptions complex_options() const;
  FlowPlan flow_plan() const;
};

/// Parse "0.25", "-pi/2", "3*pi/2", "2pi", "1e-10". Throws std::invalid_argument.
double parse_real(const std::string& text);

/// key = value lines, '#' starts a comment. `origin` names the source in
/// error messages. All module preconditions are checked here.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical key = value rendering (round-trips through parse_scenario).
std::string format_scenario(const Scenario& s);

}  // namespace conemorse
