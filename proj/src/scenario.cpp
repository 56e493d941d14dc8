#include "conemorse/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace conemorse {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// factor := number ["pi"] | "pi"
double parse_factor(const std::string& t, std::size_t& i) {
  double value = 1.0;
  bool any = false;
  if (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.')) {
    const auto res = std::from_chars(t.data() + i, t.data() + t.size(), value);
    if (res.ec != std::errc{}) throw std::invalid_argument("bad number in '" + t + "'");
    i = static_cast<std::size_t>(res.ptr - t.data());
    any = true;
  }
  if (t.compare(i, 2, "pi") == 0) {
    value *= kPi;
    i += 2;
    any = true;
  }
  if (!any) throw std::invalid_argument("expected a number or 'pi' in '" + t + "'");
  return value;
}

std::string stringify(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + stringify(v[i]);
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(trim(item)));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

long long parse_integer(const std::string& text) {
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

double parse_real(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) throw std::invalid_argument("empty value");
  std::size_t i = 0;
  double sign = 1.0;
  if (t[i] == '-' || t[i] == '+') sign = t[i++] == '-' ? -1.0 : 1.0;
  double v = parse_factor(t, i);
  while (i < t.size()) {
    const char op = t[i++];
    if (op != '*' && op != '/') {
      throw std::invalid_argument("unexpected '" + std::string(1, op) + "' in '" + text + "'");
    }
    const double f = parse_factor(t, i);
    v = op == '*' ? v * f : v / f;
  }
  if (!std::isfinite(v)) throw std::invalid_argument("value is not finite: '" + text + "'");
  return sign * v;
}

ConePoint Scenario::p() const { return make_point(surface(), p_r, p_theta); }
ConePoint Scenario::q() const { return make_point(surface(), q_r, q_theta); }

ComplexOptions Scenario::complex_options() const {
  ComplexOptions o;
  o.segments = segments;
  o.samples = samples;
  o.rips_scale = rips_scale;
  return o;
}

FlowPlan Scenario::flow_plan() const {
  FlowPlan f;
  f.samples = flow_samples;
  f.seed = seed;
  f.segments = segments;
  f.amplitude = amplitude;
  f.flow = flow;
  f.energy_tol = energy_tol;
  return f;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Scenario s;
  std::map<std::string, int> seen;  // key -> line
  int line_no = 0;
  // Context for errors raised while checking cross-field preconditions.
  const auto fail = [&](int line, const std::string& msg) -> void {
    throw ScenarioError(origin + ":" + std::to_string(line) + ": " + msg);
  };
  const auto positive = [](double v) { return v > 0.0; };

  using Setter = std::function<void(const std::string&)>;
  const auto real_into = [&](double& field, std::function<bool(double)> ok, const char* what) {
    return Setter([&field, ok, what](const std::string& v) {
      const double x = parse_real(v);
      if (ok && !ok(x)) throw std::invalid_argument(what);
      field = x;
    });
  };
  const auto int_into = [&](int& field, long long lo, const char* what) {
    return Setter([&field, lo, what](const std::string& v) {
      const long long x = parse_integer(v);
      if (x < lo || x > 100000000) throw std::invalid_argument(what);
      field = static_cast<int>(x);
    });
  };

  bool have_frac = false, have_abs = false;
  const std::map<std::string, Setter> setters = {
      {"name", [&](const std::string& v) { s.name = v; }},
      {"alpha", real_into(s.alpha, positive, "alpha must be positive")},
      {"p_r", real_into(s.p_r, [](double v) { return v >= 0.0; }, "radius must be >= 0")},
      {"p_theta", real_into(s.p_theta, nullptr, "")},
      {"q_r", real_into(s.q_r, [](double v) { return v >= 0.0; }, "radius must be >= 0")},
      {"q_theta", real_into(s.q_theta, nullptr, "")},
      {"segments", int_into(s.segments, 2, "segments must be an integer >= 2")},
      {"samples", int_into(s.samples, 1, "samples must be an integer >= 1")},
      {"flow_samples", int_into(s.flow_samples, 1, "flow_samples must be an integer >= 1")},
      {"flow_max_iter", int_into(s.flow.max_iter, 1, "flow_max_iter must be an integer >= 1")},
      {"flow_tol", real_into(s.flow.tol, positive, "flow_tol must be positive")},
      {"flow_step", real_into(s.flow.step, [](double v) { return v > 0.0 && v <= 1.0; },
                              "flow_step must lie in (0, 1]")},
      {"amplitude", real_into(s.amplitude, [](double v) { return v >= 0.0; },
                              "amplitude must be >= 0")},
      {"energy_tol", real_into(s.energy_tol, positive, "energy_tol must be positive")},
      {"merge_window", real_into(s.merge_window, positive, "merge_window must be positive")},
      {"seed",
       [&](const std::string& v) {
         const long long x = parse_integer(v);
         if (x < 0) throw std::invalid_argument("seed must be >= 0");
         s.seed = static_cast<std::uint64_t>(x);
       }},
      {"rips_scale",
       [&](const std::string& v) {
         const double x = parse_real(v);
         if (!(x > 0.0)) throw std::invalid_argument("rips_scale must be positive");
         s.rips_scale = x;
       }},
      {"eps_fractions",
       [&](const std::string& v) {
         auto xs = parse_list(v);
         for (double x : xs) {
           if (!(x > 0.0 && x < 1.0)) {
             throw std::invalid_argument("eps fractions must lie in (0, 1)");
           }
         }
         s.eps = EpsRule{std::move(xs), true};
         have_frac = true;
       }},
      {"eps",
       [&](const std::string& v) {
         auto xs = parse_list(v);
         for (double x : xs) {
           if (!(x > 0.0)) throw std::invalid_argument("eps values must be positive");
         }
         s.eps = EpsRule{std::move(xs), false};
         have_abs = true;
       }},
      {"out", [&](const std::string& v) { s.out = std::filesystem::path(v); }},
  };

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) fail(line_no, "unknown key '" + key + "'");
    if (seen.count(key)) {
      fail(line_no, "duplicate key '" + key + "' (first set on line " +
                        std::to_string(seen[key]) + ")");
    }
    if (value.empty()) fail(line_no, "missing value for '" + key + "'");
    seen[key] = line_no;
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      fail(line_no, key + ": " + e.what());
    }
    if (have_frac && have_abs) fail(line_no, "set either eps or eps_fractions, not both");
  }

  for (const char* key : {"alpha", "p_r", "p_theta", "q_r", "q_theta"}) {
    if (!seen.count(key)) fail(line_no, std::string("missing required key '") + key + "'");
  }
  if (s.p_r == 0.0) fail(seen["p_r"], "vertex endpoint unsupported (p_r = 0)");
  if (s.q_r == 0.0) fail(seen["q_r"], "vertex endpoint unsupported (q_r = 0)");
  if (s.name.empty()) s.name = "scenario";
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ScenarioError(path.string() + ": cannot read scenario file");
  std::stringstream buf;
  buf << f.rdbuf();
  Scenario s = parse_scenario(buf.str(), path.string());
  if (s.name == "scenario") s.name = path.stem().string();
  return s;
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream o;
  o << "name = " << s.name << "\n"
    << "alpha = " << stringify(s.alpha) << "\n"
    << "p_r = " << stringify(s.p_r) << "\n"
    << "p_theta = " << stringify(s.p_theta) << "\n"
    << "q_r = " << stringify(s.q_r) << "\n"
    << "q_theta = " << stringify(s.q_theta) << "\n"
    << "segments = " << s.segments << "\n"
    << "samples = " << s.samples << "\n"
    << "flow_samples = " << s.flow_samples << "\n"
    << "flow_tol = " << stringify(s.flow.tol) << "\n"
    << "flow_max_iter = " << s.flow.max_iter << "\n"
    << "flow_step = " << stringify(s.flow.step) << "\n"
    << "seed = " << s.seed << "\n"
    << "amplitude = " << stringify(s.amplitude) << "\n"
    << "energy_tol = " << stringify(s.energy_tol) << "\n"
    << "merge_window = " << stringify(s.merge_window) << "\n"
    << (s.eps.relative ? "eps_fractions = " : "eps = ") << join(s.eps.values) << "\n";
  if (s.rips_scale) o << "rips_scale = " << stringify(*s.rips_scale) << "\n";
  if (s.out) o << "out = " << s.out->string() << "\n";
  return o.str();
}

}  // namespace conemorse
