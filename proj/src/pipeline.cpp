#include "conemorse/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace conemorse {

SampledComplex build_sampled_complex(const ConeSurface& surface, const ConePoint& p,
                                     const ConePoint& q, const ComplexOptions& options) {
  if (options.samples < 1) throw std::invalid_argument("sample count must be positive");
  SampledComplex out;
  out.input.geodesics = enumerate_all(surface, p, q);
  out.input.levels = critical_levels(out.input.geodesics);

  SampleOptions so;
  so.segments = options.segments;
  const auto samples =
      sample_paths(surface, p, q, options.samples, SampleStrategy::VertexRouted, 0, so);
  std::vector<double> energies;
  energies.reserve(samples.size());
  for (const auto& s : samples) energies.push_back(discrete_energy(s));
  const auto dist = pairwise_distances(samples);

  out.rips_scale = options.rips_scale ? *options.rips_scale
                                     : default_rips_scale(dist, samples.size());
  out.input.complex = build_rips(energies, dist, out.rips_scale);
  out.persistence = persistence0(out.input.complex);
  return out;
}

bool FlowSummary::all_monotone() const noexcept {
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.monotone; });
}

FlowSummary run_flows(const ConeSurface& surface, const ConePoint& p, const ConePoint& q,
                      const GeodesicSet& geodesics, const FlowPlan& plan) {
  SampleOptions so;
  so.segments = plan.segments;
  so.amplitude = plan.amplitude;
  const auto starts =
      sample_paths(surface, p, q, plan.samples, SampleStrategy::Perturbed, plan.seed, so);

  FlowSummary out;
  out.basin_hits.assign(geodesics.geodesics.size(), 0);
  for (const auto& start : starts) {
    const FlowResult r = flow_to_critical(start, plan.flow);
    FlowRecord rec;
    rec.initial_energy = r.energy_trace.front();
    rec.final_energy = r.energy();
    rec.iterations = r.iterations;
    rec.converged = r.converged;
    for (std::size_t i = 1; i < r.energy_trace.size(); ++i) {
      if (r.energy_trace[i] > r.energy_trace[i - 1]) rec.monotone = false;
    }
    if (!r.converged) {
      ++out.unconverged;
    } else {
      rec.limit = classify_limit(r, geodesics.geodesics, plan.energy_tol);
      if (!rec.limit) {
        ++out.unresolved;
      } else {
        for (std::size_t g = 0; g < geodesics.geodesics.size(); ++g) {
          if (geodesics.geodesics[g].kind == *rec.limit) ++out.basin_hits[g];
        }
      }
    }
    out.records.push_back(rec);
  }
  return out;
}

}  // namespace conemorse
