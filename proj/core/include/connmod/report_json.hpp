#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "connmod/lfr.hpp"
#include "connmod/pipeline.hpp"
#include "connmod/wellconn.hpp"

namespace connmod {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// {clusters:[{id,n,mincut,well_connected,is_tree,connected}], pct_well_connected,
///  pct_disconnected, node_coverage, threshold, min_size, ...}
Json to_json(const ProfileReport& report);

/// {stages:[...], coverage:{stage:{ge2,geB}}, fates:{id:label}, fate_counts, ...}
/// `output_path` is recorded as output_clustering_path.
Json to_json(const CMReport& report, const CMParams& params, const std::string& output_path);

/// {N,k,k_max,tau1,tau2,c_min,c_max,mu,diagnostics:{tau1,tau2}}; a failed
/// exponent is null with its error in diagnostics.
Json to_json(const LFRParams& params);

Json to_json(const PowerLawFit& fit);

/// Rows "n\tmincut" for every profiled cluster with a defined min cut.
std::string scatter_tsv(const ProfileReport& report);

}  // namespace connmod
