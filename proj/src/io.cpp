#include "gps/io.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace gps {

namespace {

nlohmann::json ci_json(const ConfidenceInterval& ci) {
  return nlohmann::json{ci.lo, ci.hi};
}

}  // namespace

nlohmann::json snapshot_json(const Reservoir& state) {
  std::vector<SampledEdge> edges = state.entries();
  std::sort(edges.begin(), edges.end(),
            [](const SampledEdge& a, const SampledEdge& b) {
              return std::pair{a.edge.u, a.edge.v} <
                     std::pair{b.edge.u, b.edge.v};
            });
  nlohmann::json arr = nlohmann::json::array();
  for (const SampledEdge& e : edges) {
    arr.push_back({{"u", e.edge.u},
                   {"v", e.edge.v},
                   {"w", e.w},
                   {"priority", e.r}});
  }
  return nlohmann::json{{"capacity", state.capacity()},
                        {"zstar", state.zstar()},
                        {"edges", std::move(arr)}};
}

nlohmann::json report_json(const EstimateReport& r) {
  nlohmann::json j{{"n_tri", r.n_tri},
                   {"n_wedge", r.n_wedge},
                   {"v_tri", r.v_tri},
                   {"v_wedge", r.v_wedge},
                   {"cov_tri_wedge", r.cov_tri_wedge},
                   {"ci95_tri", ci_json(r.ci95_tri)},
                   {"ci95_wedge", ci_json(r.ci95_wedge)},
                   {"v_alpha_clamped", r.v_alpha_clamped}};
  if (r.alpha) {
    j["alpha"] = *r.alpha;
    j["v_alpha"] = *r.v_alpha;
    j["ci95_alpha"] = ci_json(*r.ci95_alpha);
  } else {
    j["alpha"] = nullptr;
    j["v_alpha"] = nullptr;
    j["ci95_alpha"] = nullptr;
  }
  return j;
}

nlohmann::json trial_summary_json(const TrialSummary& s) {
  nlohmann::json j{{"trials", s.trials},
                   {"truth", s.truth},
                   {"mean_estimate", s.mean_estimate},
                   {"empirical_variance", s.empirical_variance},
                   {"mean_variance_estimate", s.mean_variance_estimate},
                   {"se_mean", s.se_mean},
                   {"se_mean_variance", s.se_mean_variance},
                   {"ci_coverage", s.ci_coverage},
                   {"mean_update_micros", s.mean_update_micros}};
  j["are"] = s.are ? nlohmann::json(*s.are) : nlohmann::json(nullptr);
  j["z_score"] =
      s.z_score ? nlohmann::json(*s.z_score) : nlohmann::json(nullptr);
  return j;
}

std::string trial_summary_csv_header() {
  return "graph,m,mode,weight_fn,trials,truth,mean_estimate,"
         "empirical_variance,mean_variance_estimate,are,z_score,ci_coverage,"
         "mean_update_micros";
}

std::string trial_summary_csv_row(const std::string& graph, std::size_t m,
                                  const std::string& mode,
                                  const std::string& weight_fn,
                                  const TrialSummary& s) {
  std::ostringstream out;
  out.precision(12);
  out << graph << ',' << m << ',' << mode << ',' << weight_fn << ','
      << s.trials << ',' << s.truth << ',' << s.mean_estimate << ','
      << s.empirical_variance << ',' << s.mean_variance_estimate << ',';
  if (s.are) out << *s.are;
  out << ',';
  if (s.z_score) out << *s.z_score;
  out << ',' << s.ci_coverage << ',' << s.mean_update_micros;
  return out.str();
}

void write_tracking_csv(const std::vector<TrackPoint>& points,
                        std::ostream& out) {
  out << "t,n_tri,v_tri,ci_lo,ci_hi,n_wedge,v_wedge,alpha,zstar,sample_size\n";
  out.precision(12);
  for (const TrackPoint& p : points) {
    out << p.t << ',' << p.n_tri << ',' << p.v_tri << ',' << p.ci_lo << ','
        << p.ci_hi << ',' << p.n_wedge << ',' << p.v_wedge << ',';
    if (p.alpha) out << *p.alpha;
    out << ',' << p.zstar << ',' << p.sample_size << '\n';
  }
}

}  // namespace gps
