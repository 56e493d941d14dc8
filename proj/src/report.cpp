#include "conemorse/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conemorse {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string kind_name(const GeodesicKind& k) { return k.is_broken() ? "broken" : "classical"; }

json series_json(const FormalSeries& s) {
  json coeffs = json::array();
  for (int d = 0; d <= s.degree(); ++d) coeffs.push_back(s.coefficient(d));
  return {{"text", s.to_string()}, {"coefficients", coeffs}};
}

json scenario_json(const Scenario& s) {
  json eps = s.eps.values;
  return {{"name", s.name},
          {"alpha", s.alpha},
          {"p", {{"r", s.p_r}, {"theta", s.p_theta}}},
          {"q", {{"r", s.q_r}, {"theta", s.q_theta}}},
          {"segments", s.segments},
          {"samples", s.samples},
          {"flow_samples", s.flow_samples},
          {"seed", s.seed},
          {"flow", {{"tol", s.flow.tol}, {"max_iter", s.flow.max_iter}, {"step", s.flow.step}}},
          {"eps", {{"values", eps}, {"relative", s.eps.relative}}}};
}

json geodesic_json(const GeodesicSet& set) {
  json out = json::array();
  for (std::size_t i = 0; i < set.geodesics.size(); ++i) {
    const auto& g = set.geodesics[i];
    out.push_back({{"id", i},
                   {"kind", kind_name(g.kind)},
                   {"sheet", g.kind.is_broken() ? json(nullptr) : json(g.kind.sheet)},
                   {"delta", g.delta},
                   {"length", g.length},
                   {"energy", g.energy},
                   {"tied", set.is_tied(i)}});
  }
  return out;
}

json header(const Scenario& s, const char* command) {
  return {{"schema_version", kReportSchemaVersion},
          {"tool", kToolVersion},
          {"command", command},
          {"scenario", scenario_json(s)}};
}

std::optional<double> broken_energy(const GeodesicSet& set) {
  for (const auto& g : set.geodesics) {
    if (g.kind.is_broken()) return g.energy;
  }
  return std::nullopt;
}

}  // namespace

std::string geodesic_table(const GeodesicSet& set) {
  std::ostringstream o;
  o << "kind\tsheet\tdelta\tlength\tenergy\ttied\n";
  for (std::size_t i = 0; i < set.geodesics.size(); ++i) {
    const auto& g = set.geodesics[i];
    o << kind_name(g.kind) << '\t' << (g.kind.is_broken() ? "-" : std::to_string(g.kind.sheet))
      << '\t' << fixed(g.delta, 12) << '\t' << fixed(g.length, 12) << '\t'
      << fixed(g.energy, 12) << '\t' << (set.is_tied(i) ? "yes" : "no") << '\n';
  }
  return o.str();
}

std::string geodesic_table_pretty(const GeodesicSet& set) {
  std::ostringstream o;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %5s %12s %12s %12s  %s\n", "kind", "sheet", "delta",
                "length", "energy", "tied");
  o << buf;
  for (std::size_t i = 0; i < set.geodesics.size(); ++i) {
    const auto& g = set.geodesics[i];
    const std::string sheet = g.kind.is_broken() ? "-" : std::to_string(g.kind.sheet);
    std::snprintf(buf, sizeof buf, "%-10s %5s %12.6f %12.6f %12.6f  %s\n",
                  kind_name(g.kind).c_str(), sheet.c_str(), g.delta, g.length, g.energy,
                  set.is_tied(i) ? "yes" : "no");
    o << buf;
  }
  return o.str();
}

std::string geodesics_report(const Scenario& s, const GeodesicSet& set) {
  json j = header(s, "geodesics");
  j["geodesics"] = geodesic_json(set);
  j["classical_count"] = set.classical_count();
  j["has_ties"] = set.has_ties();
  return j.dump(2) + "\n";
}

std::string flow_table(const FlowSummary& flows) {
  std::ostringstream o;
  o << "sample\tinitial_energy\tfinal_energy\titerations\tconverged\tmonotone\tlimit\n";
  for (std::size_t i = 0; i < flows.records.size(); ++i) {
    const auto& r = flows.records[i];
    o << i << '\t' << fixed(r.initial_energy, 12) << '\t' << fixed(r.final_energy, 12) << '\t'
      << r.iterations << '\t' << (r.converged ? "yes" : "no") << '\t'
      << (r.monotone ? "yes" : "no") << '\t'
      << (r.limit ? to_string(*r.limit) : (r.converged ? "unresolved" : "-")) << '\n';
  }
  return o.str();
}

std::string flow_report(const Scenario& s, const GeodesicSet& set, const FlowSummary& flows) {
  json j = header(s, "flow");
  j["geodesics"] = geodesic_json(set);
  json basins = json::array();
  for (std::size_t g = 0; g < set.geodesics.size(); ++g) {
    basins.push_back({{"id", g},
                      {"geodesic", to_string(set.geodesics[g].kind)},
                      {"energy", set.geodesics[g].energy},
                      {"hits", flows.basin_hits[g]}});
  }
  j["basins"] = basins;
  j["samples"] = flows.records.size();
  j["converged"] = flows.converged();
  j["unconverged"] = flows.unconverged;
  j["unresolved"] = flows.unresolved;
  j["all_monotone"] = flows.all_monotone();
  json recs = json::array();
  for (const auto& r : flows.records) {
    recs.push_back({{"initial_energy", r.initial_energy},
                    {"final_energy", r.final_energy},
                    {"iterations", r.iterations},
                    {"converged", r.converged},
                    {"monotone", r.monotone},
                    {"limit", r.limit ? json(to_string(*r.limit)) : json(nullptr)}});
  }
  j["records"] = recs;
  return j.dump(2) + "\n";
}

std::string morse_report(const Scenario& s, const SampledComplex& complex,
                         const MorseReport& report) {
  const auto& set = complex.input.geodesics;
  json j = header(s, "morse");
  j["geodesics"] = geodesic_json(set);

  const auto& k = complex.input.complex;
  json merges = json::array();
  for (const auto& p : complex.persistence) {
    if (!p.essential() && p.death > p.birth) merges.push_back({{"birth", p.birth}, {"death", p.death}});
  }
  json near = nullptr;
  if (const auto eb = broken_energy(set)) {
    near = {{"level", *eb},
            {"window", s.merge_window},
            {"count", merge_deaths(complex.persistence, *eb - s.merge_window,
                                   *eb + s.merge_window)}};
  }
  j["complex"] = {{"samples", k.vertices().size()},
                  {"rips_scale", complex.rips_scale},
                  {"edges", k.edges().size()},
                  {"triangles", k.triangles().size()},
                  {"essential_components", report.essential_components},
                  {"merges", merges},
                  {"merges_near_broken", near}};

  json levels = json::array();
  for (const auto& l : report.levels) {
    json pairs = json::array();
    for (const auto& p : l.pairs) pairs.push_back(series_json(p));
    levels.push_back({{"energy", l.energy},
                      {"members", l.members},
                      {"eps", l.eps},
                      {"pairs", pairs},
                      {"eps_independent", l.eps_independent}});
  }
  j["levels"] = levels;

  json idx = json::array();
  for (const auto& g : report.geodesics) {
    idx.push_back({{"id", g.geodesic},
                   {"geodesic", to_string(set.geodesics[g.geodesic].kind)},
                   {"index", g.index ? series_json(*g.index) : json(nullptr)},
                   {"multiplicity", g.multiplicity ? json(*g.multiplicity) : json(nullptr)},
                   {"diagnostic", g.diagnostic}});
  }
  j["indices"] = idx;
  j["total"] = series_json(report.total);
  j["space"] = series_json(report.space);
  j["relation"] = {{"holds", report.relation.holds()},
                   {"quotient", report.relation.quotient ? series_json(*report.relation.quotient)
                                                         : json(nullptr)},
                   {"violation", report.relation.violation}};
  j["broken_bound"] = {
      {"classical_count", report.classical_count},
      {"multiplicity", report.broken_multiplicity ? json(*report.broken_multiplicity)
                                                  : json(nullptr)},
      {"holds", report.broken_bound_holds()}};
  j["space_consistent"] = report.space_consistent();
  j["notes"] = {
      "pair series are truncated at degree 1; higher homology is not computed",
      "the space series is the constant 1 (paths on a cone form a contractible space); "
      "essential_components is the measured check"};
  return j.dump(2) + "\n";
}

std::string morse_summary(const SampledComplex& complex, const MorseReport& report,
                          double merge_window) {
  const auto& set = complex.input.geodesics;
  std::ostringstream o;
  o << "levels:\n";
  for (const auto& l : report.levels) {
    o << "  E = " << fixed(l.energy, 6) << "  i = " << l.pairs.front().to_string()
      << (l.eps_independent ? "" : "  (depends on eps!)");
    if (l.members.size() > 1) o << "  [" << l.members.size() << " tied geodesics]";
    o << '\n';
  }
  o << "geodesics:\n";
  for (const auto& g : report.geodesics) {
    o << "  " << to_string(set.geodesics[g.geodesic].kind) << ": ";
    if (g.index) {
      o << "i = " << g.index->to_string() << ", mult = " << *g.multiplicity << '\n';
    } else {
      o << g.diagnostic << '\n';
    }
  }
  if (const auto eb = broken_energy(set)) {
    o << "merges within " << merge_window << " of E = " << fixed(*eb, 6) << ": "
      << merge_deaths(complex.persistence, *eb - merge_window, *eb + merge_window) << '\n';
  }
  o << "sum of indices = " << report.total.to_string() << ", P(space) = "
    << report.space.to_string() << '\n';
  if (report.relation.holds()) {
    o << "Morse relation holds, Q = " << report.relation.quotient->to_string() << '\n';
  } else {
    o << "Morse relation VIOLATED: " << report.relation.violation << '\n';
  }
  return o.str();
}

std::string develop_svg(const Scenario& s, const GeodesicSet& set) {
  constexpr double kSize = 480.0, kCenter = 240.0;
  const double alpha = s.alpha;
  const double rmax = std::max(s.p_r, s.q_r);
  const double scale = 190.0 / (rmax > 0.0 ? rmax : 1.0);
  const double ring = rmax * 1.15;
  const auto X = [&](double r, double phi) { return fixed(kCenter + scale * r * std::cos(phi), 3); };
  const auto Y = [&](double r, double phi) { return fixed(kCenter - scale * r * std::sin(phi), 3); };
  const ConePoint p = s.p(), q = s.q();

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Sector of angle alpha; wider cones wrap, so draw the full disc and say so.
  if (alpha < 2.0 * kPi - 1e-12) {
    const int large = alpha > kPi ? 1 : 0;
    o << "<path d=\"M " << fixed(kCenter, 3) << ' ' << fixed(kCenter, 3) << " L " << X(ring, 0.0)
      << ' ' << Y(ring, 0.0) << " A " << fixed(scale * ring, 3) << ' ' << fixed(scale * ring, 3)
      << " 0 " << large << " 0 " << X(ring, alpha) << ' ' << Y(ring, alpha)
      << " Z\" fill=\"#eef2f8\" stroke=\"#8899aa\"/>\n";
  } else {
    o << "<circle cx=\"" << fixed(kCenter, 3) << "\" cy=\"" << fixed(kCenter, 3) << "\" r=\""
      << fixed(scale * ring, 3) << "\" fill=\"#eef2f8\" stroke=\"#8899aa\"/>\n";
    o << "<line x1=\"" << fixed(kCenter, 3) << "\" y1=\"" << fixed(kCenter, 3) << "\" x2=\""
      << X(ring, 0.0) << "\" y2=\"" << Y(ring, 0.0)
      << "\" stroke=\"#8899aa\" stroke-dasharray=\"4 3\"/>\n";
  }
  o << "<text x=\"8\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">alpha = "
    << fixed(alpha, 6) << " rad";
  if (alpha >= 2.0 * kPi - 1e-12) o << " (" << fixed(alpha / (2.0 * kPi), 3) << " turns)";
  o << "</text>\n";

  for (const auto& g : set.geodesics) {
    const double qphi = p.theta + g.delta;
    if (g.kind.is_broken()) {
      const double qtheta = p.theta + normalize_angle(s.surface(), q.theta - p.theta);
      o << "<polyline points=\"" << X(p.r, p.theta) << ',' << Y(p.r, p.theta) << ' '
        << fixed(kCenter, 3) << ',' << fixed(kCenter, 3) << ' ' << X(q.r, qtheta) << ','
        << Y(q.r, qtheta) << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\""
        << " stroke-dasharray=\"6 3\"/>\n";
      continue;
    }
    o << "<line x1=\"" << X(p.r, p.theta) << "\" y1=\"" << Y(p.r, p.theta) << "\" x2=\""
      << X(q.r, qphi) << "\" y2=\"" << Y(q.r, qphi)
      << "\" stroke=\"#2c6fbb\" stroke-width=\"1.5\"/>\n";
    o << "<circle cx=\"" << X(q.r, qphi) << "\" cy=\"" << Y(q.r, qphi)
      << "\" r=\"3\" fill=\"#2c6fbb\"/>\n";
    o << "<text x=\"" << X(q.r * 1.06, qphi) << "\" y=\"" << Y(q.r * 1.06, qphi)
      << "\" font-family=\"sans-serif\" font-size=\"11\">k=" << g.kind.sheet << "</text>\n";
  }
  o << "<circle cx=\"" << X(p.r, p.theta) << "\" cy=\"" << Y(p.r, p.theta)
    << "\" r=\"4\" fill=\"black\"/>\n";
  o << "<circle cx=\"" << fixed(kCenter, 3) << "\" cy=\"" << fixed(kCenter, 3)
    << "\" r=\"2.5\" fill=\"#c0392b\"/>\n";
  o << "</svg>\n";
  return o.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << content;
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace conemorse
