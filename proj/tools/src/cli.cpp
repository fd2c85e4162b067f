#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>

#include "connmod/clusterer.hpp"
#include "connmod/error.hpp"
#include "connmod/lfr.hpp"
#include "connmod/metrics.hpp"
#include "connmod/parallel.hpp"
#include "connmod/pipeline.hpp"
#include "connmod/report_json.hpp"
#include "connmod/wellconn.hpp"

namespace connmod::cli {
namespace {

// Resolutions of the --resolution-sweep preset.
constexpr double kSweep[] = {0.5, 0.1, 0.01, 0.001, 0.0001};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownLabel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Level { Error, Warn, Info, Debug };

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("CONNMOD_LOG_LEVEL");
    const std::string_view v = env ? env : "warn";
    if (v == "error") level_ = Level::Error;
    else if (v == "info") level_ = Level::Info;
    else if (v == "debug") level_ = Level::Debug;
  }
  void operator()(Level l, const std::string& msg) const {
    static constexpr const char* names[] = {"error", "warn", "info", "debug"};
    if (l <= level_) err_ << "connmod: " << names[static_cast<int>(l)] << ": " << msg << '\n';
  }

 private:
  std::ostream& err_;
  Level level_ = Level::Warn;
};

struct RunConfig {
  std::string subcommand;
  std::string graph;
  std::string clustering;
  std::string reference;
  std::string clusterer = "cpm";
  double resolution = 0.01;
  bool resolution_sweep = false;
  std::uint32_t k = 10;
  std::size_t b = 11;
  std::string threshold = "log10";
  std::optional<double> r;
  std::vector<double> custom;
  std::size_t min_size = 11;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
};

Json to_json(const RunConfig& c) {
  return {{"subcommand", c.subcommand},
          {"graph", c.graph},
          {"clustering", c.clustering.empty() ? Json(nullptr) : Json(c.clustering)},
          {"reference", c.reference.empty() ? Json(nullptr) : Json(c.reference)},
          {"clusterer", c.clusterer},
          {"resolution", c.resolution},
          {"resolution_sweep", c.resolution_sweep},
          {"k", c.k},
          {"b", c.b},
          {"threshold", c.threshold},
          {"r", c.r ? Json(*c.r) : Json(nullptr)},
          {"custom", c.custom},
          {"min_size", c.min_size},
          {"seed", c.seed},
          {"threads", c.threads},
          {"out", c.out.empty() ? Json(nullptr) : Json(c.out)}};
}

Json envelope(const RunConfig& c, Json result) {
  return {{"schema_version", kReportSchemaVersion},
          {"tool", "connmod"},
          {"tool_version", kToolVersion},
          {"config", to_json(c)},
          {"result", std::move(result)}};
}

std::string format_number(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content) || !f.flush()) throw IoError("cannot write '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// JSON to <out>.json, or to `out` without --out.
void emit_json(const RunConfig& c, const Json& j, std::ostream& out) {
  if (c.out.empty()) out << dump(j);
  else write_file(c.out + ".json", dump(j));
}

Graph load_graph(const RunConfig& c, const Log& log) {
  if (c.graph.empty()) throw ConfigError("--graph is required");
  auto in = open_in(c.graph);
  auto loaded = load_edge_list(in);
  std::ostringstream msg;
  msg << c.graph << ": " << loaded.graph.node_count() << " nodes, " << loaded.graph.edge_count() << " edges ("
      << loaded.self_loops << " self-loops, " << loaded.duplicates << " duplicates dropped)";
  log(Level::Info, msg.str());
  return std::move(loaded.graph);
}

Clustering load_clustering_file(const std::string& path, const Graph& g) {
  auto in = open_in(path);
  try {
    return load_clustering(in, g);
  } catch (const ReferenceError& e) {
    throw UnknownLabel(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

ThresholdFn make_threshold(const RunConfig& c) {
  if (c.threshold == "log10") return ThresholdFn::log10();
  if (c.threshold == "log2") return ThresholdFn::log2();
  if (c.threshold == "sqrt5") return ThresholdFn::sqrt_div5();
  if (c.threshold == "traag") {
    if (!c.r) throw ConfigError("--threshold traag needs --r");
    return ThresholdFn::traag_linear(*c.r);
  }
  if (c.custom.size() != 3) throw ConfigError("--threshold custom needs --custom A B C");
  return ThresholdFn::custom(c.custom[0], c.custom[1], c.custom[2]);
}

ClustererConfig make_clusterer(const RunConfig& c, double resolution) {
  ClustererConfig cc;
  cc.seed = c.seed;
  if (c.clusterer == "cpm") cc.kind = CpmClusterer{resolution};
  else if (c.clusterer == "modularity") cc.kind = ModularityClusterer{};
  else cc.kind = IkcClusterer{c.k};
  cc.validate();
  return cc;
}

unsigned thread_count(const RunConfig& c) { return c.threads ? c.threads : default_threads(); }

std::string clustering_tsv(const Graph& g, const Clustering& c) {
  std::ostringstream s;
  write_clustering(s, g, c);
  return s.str();
}

double coverage(const Clustering& c, std::size_t n, std::size_t min_size) {
  return n ? node_coverage(c, n, min_size) : 0.0;
}

int cmd_cluster(const RunConfig& c, const Log& log) {
  if (c.out.empty()) throw ConfigError("cluster needs --out");
  std::vector<double> resolutions{c.resolution};
  if (c.resolution_sweep) {
    if (c.clusterer != "cpm") throw ConfigError("--resolution-sweep applies to --clusterer cpm only");
    resolutions.assign(std::begin(kSweep), std::end(kSweep));
  }
  for (double r : resolutions) make_clusterer(c, r);
  const Graph g = load_graph(c, log);

  Json runs = Json::array();
  for (double r : resolutions) {
    const ClustererConfig cc = make_clusterer(c, r);
    const Clustering clustering = run_clusterer(g, cc);
    const std::string path = c.out + (c.resolution_sweep ? ".r" + format_number(r) : "") + ".tsv";
    write_file(path, clustering_tsv(g, clustering));

    std::map<std::size_t, std::size_t> histogram;
    for (const auto& cl : clustering.clusters()) ++histogram[cl.nodes.size()];
    Json hist = Json::object();
    for (auto [size, count] : histogram) hist[std::to_string(size)] = count;
    Json run = {{"clusterer", cc.describe()},
                {"clusters", clustering.size()},
                {"size_histogram", std::move(hist)},
                {"coverage_ge2", coverage(clustering, g.node_count(), 2)},
                {"coverage_ge11", coverage(clustering, g.node_count(), 11)},
                {"clustering_path", path}};
    if (clustering.empty()) run["note"] = "no clusters found";
    log(Level::Info, cc.describe() + ": " + std::to_string(clustering.size()) + " clusters");
    runs.push_back(std::move(run));
  }
  Json result = {{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"runs", std::move(runs)}};
  write_file(c.out + ".json", dump(envelope(c, std::move(result))));
  return kOk;
}

int cmd_profile(const RunConfig& c, const Log& log, std::ostream& out) {
  if (c.clustering.empty()) throw ConfigError("profile needs --clustering");
  const ThresholdFn t = make_threshold(c);
  const Graph g = load_graph(c, log);
  const Clustering clustering = load_clustering_file(c.clustering, g);
  const ProfileReport report = profile_clustering(g, clustering, t, c.min_size, thread_count(c));
  emit_json(c, envelope(c, to_json(report)), out);
  if (!c.out.empty()) write_file(c.out + ".scatter.tsv", scatter_tsv(report));
  return kOk;
}

int cmd_cm(const RunConfig& c, const Log& log) {
  if (c.out.empty()) throw ConfigError("cm needs --out");
  CMParams params;
  params.min_size = c.b;
  params.threshold = make_threshold(c);
  params.clusterer = make_clusterer(c, c.resolution);
  params.threads = thread_count(c);
  const Graph g = load_graph(c, log);
  std::optional<Clustering> input;
  if (!c.clustering.empty()) input = load_clustering_file(c.clustering, g);

  const CMReport report = run_pipeline(g, params, input);
  const std::string path = c.out + ".tsv";
  write_file(path, clustering_tsv(g, report.output));

  const auto violations = verify_guarantee(g, report.output, params, params.threads);
  Json result = to_json(report, params, path);
  result["guarantee_verified"] = violations.empty();
  result["guarantee_violations"] = violations;
  write_file(c.out + ".json", dump(envelope(c, std::move(result))));
  if (!violations.empty()) {
    log(Level::Error, std::to_string(violations.size()) + " output clusters break the guarantee");
    return kFailure;
  }
  log(Level::Info, std::to_string(report.output.size()) + " output clusters, guarantee verified");
  return kOk;
}

int cmd_eval(const RunConfig& c, const Log& log, std::ostream& out) {
  if (c.clustering.empty() || c.reference.empty()) throw ConfigError("eval needs --clustering and --reference");
  const Graph g = load_graph(c, log);
  const Clustering a = load_clustering_file(c.clustering, g);
  const Clustering b = load_clustering_file(c.reference, g);
  Json result = {{"nmi", nmi(a, b)},
                 {"ami", ami(a, b)},
                 {"ari", ari(a, b)},
                 {"n_nodes", g.node_count()},
                 {"normalization", "arithmetic"},
                 {"unassigned_nodes", "singletons"}};
  emit_json(c, envelope(c, std::move(result)), out);
  return kOk;
}

int cmd_lfr_params(const RunConfig& c, const Log& log, std::ostream& out) {
  if (c.clustering.empty()) throw ConfigError("lfr-params needs --clustering");
  const Graph g = load_graph(c, log);
  const Clustering clustering = load_clustering_file(c.clustering, g);
  const LFRParams p = estimate_params(g, clustering);
  for (const auto* e : {&p.tau1, &p.tau2})
    if (!e->fit) log(Level::Warn, "exponent fit failed: " + e->error);
  emit_json(c, envelope(c, to_json(p)), out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Log log(err);
  RunConfig c;
  CLI::App app{"Detect and repair poorly connected clusters.", "connmod"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  const auto graph = [&](CLI::App* s) {
    s->add_option("--graph", c.graph, "Edge list (two labels per line)")->required();
  };
  const auto threshold = [&](CLI::App* s) {
    s->add_option("--threshold", c.threshold, "log10|log2|sqrt5|traag|custom")
        ->check(CLI::IsMember({"log10", "log2", "sqrt5", "traag", "custom"}))
        ->capture_default_str();
    s->add_option("--r", c.r, "Resolution of the traag threshold r(n-1)")->check(CLI::PositiveNumber);
    s->add_option("--custom", c.custom, "Coefficients A B C of A*n + B*log10(n) + C")->expected(3);
  };
  const auto clusterer = [&](CLI::App* s) {
    s->add_option("--clusterer", c.clusterer, "cpm|modularity|ikc")
        ->check(CLI::IsMember({"cpm", "modularity", "ikc"}))
        ->capture_default_str();
    s->add_option("--resolution", c.resolution, "CPM resolution")->capture_default_str();
    s->add_option("--k", c.k, "IKC core number")->capture_default_str();
    s->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  };
  const auto threads = [&](CLI::App* s) {
    s->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
  };

  auto* cluster = app.add_subcommand("cluster", "Cluster a graph");
  graph(cluster);
  clusterer(cluster);
  cluster->add_flag("--resolution-sweep", c.resolution_sweep, "CPM at r = 0.5, 0.1, 0.01, 0.001, 0.0001");
  cluster->add_option("--out", c.out, "Output prefix")->required();

  auto* profile = app.add_subcommand("profile", "Min-cut profile of a clustering");
  graph(profile);
  profile->add_option("--clustering", c.clustering, "Clustering TSV")->required();
  threshold(profile);
  profile->add_option("--min-size", c.min_size, "Smallest cluster profiled")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  threads(profile);
  profile->add_option("--out", c.out, "Output prefix (default: JSON to stdout)");

  auto* cm = app.add_subcommand("cm", "Run the connectivity modifier pipeline");
  graph(cm);
  cm->add_option("--clustering", c.clustering, "Input clustering TSV (default: cluster the graph)");
  clusterer(cm);
  cm->add_option("--b", c.b, "Minimum output cluster size")->check(CLI::PositiveNumber)->capture_default_str();
  threshold(cm);
  threads(cm);
  cm->add_option("--out", c.out, "Output prefix")->required();

  auto* eval = app.add_subcommand("eval", "Compare two clusterings");
  graph(eval);
  eval->add_option("--clustering", c.clustering, "Clustering TSV")->required();
  eval->add_option("--reference", c.reference, "Reference clustering TSV")->required();
  eval->add_option("--out", c.out, "Output prefix (default: JSON to stdout)");

  auto* lfr = app.add_subcommand("lfr-params", "Estimate LFR generator parameters");
  graph(lfr);
  lfr->add_option("--clustering", c.clustering, "Clustering TSV")->required();
  lfr->add_option("--out", c.out, "Output prefix (default: JSON to stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.threads == 0) c.threads = default_threads();

  try {
    if (c.subcommand == "cluster") return cmd_cluster(c, log);
    if (c.subcommand == "profile") return cmd_profile(c, log, out);
    if (c.subcommand == "cm") return cmd_cm(c, log);
    if (c.subcommand == "eval") return cmd_eval(c, log, out);
    return cmd_lfr_params(c, log, out);
  } catch (const UnknownLabel& e) {
    log(Level::Error, e.what());
    return kReferenceError;
  } catch (const IoError& e) {
    log(Level::Error, e.what());
    return kIoError;
  } catch (const ParseError& e) {
    log(Level::Error, c.graph + ": " + e.what());
    return kIoError;
  } catch (const ConfigError& e) {
    log(Level::Error, e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    log(Level::Error, e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    log(Level::Error, e.what());
    return kFailure;
  }
}

}  // namespace connmod::cli
