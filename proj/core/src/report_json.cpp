#include "connmod/report_json.hpp"

#include <map>
#include <sstream>

namespace connmod {

Json to_json(const ProfileReport& report) {
  Json clusters = Json::array();
  for (const auto& p : report.clusters) {
    clusters.push_back({{"id", p.id},
                        {"n", p.n},
                        {"mincut", p.mincut ? Json(*p.mincut) : Json(nullptr)},
                        {"well_connected", p.well_connected},
                        {"is_tree", p.is_tree},
                        {"connected", p.connected}});
  }
  return {{"clusters", std::move(clusters)},
          {"pct_well_connected", report.pct_well_connected},
          {"pct_disconnected", report.pct_disconnected},
          {"node_coverage", report.node_coverage},
          {"threshold", report.threshold.describe()},
          {"min_size", report.min_size},
          {"total_nodes", report.total_nodes},
          {"denominator", "clusters of size >= min_size"}};
}

Json to_json(const CMReport& report, const CMParams& params, const std::string& output_path) {
  Json stages = Json::array();
  Json coverage = Json::object();
  for (const auto& s : report.stages) {
    stages.push_back({{"stage", s.stage},
                      {"clusters", s.clusters},
                      {"coverage_ge2", s.coverage_ge2},
                      {"coverage_geB", s.coverage_geB}});
    coverage[s.stage] = {{"ge2", s.coverage_ge2}, {"geB", s.coverage_geB}};
  }
  Json fates = Json::object();
  Json removed_at_filter = Json::array();
  std::map<std::string, std::size_t> counts{{"extant", 0}, {"reduced", 0}, {"split", 0}, {"degraded", 0}};
  for (const auto& f : report.fates) {
    fates[f.cluster_id] = to_string(f.fate);
    ++counts[to_string(f.fate)];
    if (f.removed_at_filter) removed_at_filter.push_back(f.cluster_id);
  }
  Json fate_counts = {{"extant", counts["extant"]},
                      {"reduced", counts["reduced"]},
                      {"split", counts["split"]},
                      {"degraded", counts["degraded"]}};
  return {{"stages", std::move(stages)},
          {"coverage", std::move(coverage)},
          {"fates", std::move(fates)},
          {"fate_counts", std::move(fate_counts)},
          {"removed_at_filter", std::move(removed_at_filter)},
          {"removed_small", report.removed_small},
          {"removed_trees", report.removed_trees},
          {"removed_post", report.removed_post},
          {"recursion",
           {{"subproblems", report.stats.subproblems},
            {"cuts", report.stats.cuts},
            {"pruned_nodes", report.stats.pruned_nodes},
            {"max_depth", report.stats.max_depth}}},
          {"B", params.min_size},
          {"threshold", params.threshold.describe()},
          {"clusterer", params.clusterer.describe()},
          {"output_clustering_path", output_path}};
}

Json to_json(const PowerLawFit& fit) {
  return {{"alpha", fit.alpha}, {"x_min", fit.x_min}, {"ks_distance", fit.ks_distance}, {"n_tail", fit.n_tail}};
}

Json to_json(const LFRParams& p) {
  const auto exponent = [](const ExponentEstimate& e) { return e.fit ? Json(e.fit->alpha) : Json(nullptr); };
  const auto diagnostic = [](const ExponentEstimate& e) {
    return e.fit ? to_json(*e.fit) : Json{{"error", e.error}};
  };
  return {{"N", p.N},
          {"k", p.k},
          {"k_max", p.k_max},
          {"tau1", exponent(p.tau1)},
          {"tau2", exponent(p.tau2)},
          {"c_min", p.c_min},
          {"c_max", p.c_max},
          {"mu", p.mu},
          {"diagnostics", {{"tau1", diagnostic(p.tau1)}, {"tau2", diagnostic(p.tau2)}}}};
}

std::string scatter_tsv(const ProfileReport& report) {
  std::ostringstream out;
  out << "n\tmincut\n";
  for (const auto& p : report.clusters) {
    if (p.mincut) out << p.n << '\t' << *p.mincut << '\n';
  }
  return out.str();
}

}  // namespace connmod
