#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probe/error.hpp"
#include "probe/experiments.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kConfigError = 2;

bool is_config_error(const probe::Error& e) {
  return e.code() == probe::Errc::ParseError || e.code() == probe::Errc::BadParams;
}

std::filesystem::path prepare_out(const std::string& dir) {
  std::filesystem::path out = dir.empty() ? std::filesystem::path(".") : std::filesystem::path(dir);
  std::filesystem::create_directories(out);
  return out;
}

int cmd_warmup(bool drop_a5, const std::vector<int>& extra_edge) {
  using namespace probe;
  WarmupFixture base = warmup_fixture();
  Graph query = base.query;
  if (drop_a5) {
    const std::vector<NodeId> keep{NodeId(0), NodeId(1), NodeId(2), NodeId(3)};
    query = induced(query, keep).graph;
  }
  if (!extra_edge.empty()) {
    if (extra_edge.size() != 2) throw Error(Errc::BadParams, "--extra-edge takes two query labels");
    const auto u = extra_edge[0] - 1;
    const auto v = extra_edge[1] - 1;
    const auto n = static_cast<int>(query.node_count());
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error(Errc::BadParams, "query labels run from 1 to " + std::to_string(n));
    query.add_edge(NodeId(static_cast<std::uint32_t>(u)), NodeId(static_cast<std::uint32_t>(v)));
  }
  const WarmupReport report = check_warmup(make_warmup(base.world, base.attach, query));
  std::cout << "world: " << base.world.node_count() << " nodes, " << base.world.edge_count()
            << " edges; a1 bridged to node " << base.attach.value << '\n';
  print_warmup(std::cout, report);
  return report.pass() ? kOk : kMismatch;
}

int cmd_certificates(const std::string& out_path) {
  using namespace probe;
  if (std::filesystem::exists(out_path)) std::filesystem::remove(out_path);
  const CertificateSet certs = obtain_certificates(kBaseKinds, out_path);
  for (const auto& [pair, cert] : certs) {
    std::cout << to_string(pair.first) << '/' << to_string(pair.second) << ": " << cert.graph.node_count()
              << " nodes, level " << cert.level << '\n';
  }
  std::cout << "wrote " << certs.size() << " certificates to " << out_path << '\n';
  return kOk;
}

int cmd_identify(const std::string& config_path, const std::string& out_dir) {
  using namespace probe;
  ExperimentConfig config = config_path.empty() ? default_config(ExperimentMode::Identify) : load_config(config_path);
  if (!out_dir.empty()) config.out_dir = out_dir;
  const CertificateSet certs = obtain_certificates(config.kinds, config.certificate_store);
  const IdentifyCampaign result = run_identify(config, certs);
  if (config.out_dir.empty()) {
    write_identify_csv(std::cout, result);
  } else {
    const auto dir = prepare_out(config.out_dir);
    std::ofstream csv(dir / "identify.csv");
    write_identify_csv(csv, result);
  }
  std::cerr << "correct " << result.correct << '/' << result.scored << '\n';
  return result.correct == result.scored ? kOk : kMismatch;
}

int cmd_weights(const std::string& config_path, const std::string& out_dir) {
  using namespace probe;
  ExperimentConfig config = config_path.empty() ? default_config(ExperimentMode::Weights) : load_config(config_path);
  if (!out_dir.empty()) config.out_dir = out_dir;
  const WeightSweep sweep = run_weights(config);
  const auto dir = prepare_out(config.out_dir);
  {
    std::ofstream rows(dir / "weights.csv");
    write_weights_csv(rows, sweep, config.kinds.size());
    std::ofstream summary(dir / "weights_summary.csv");
    write_summary_csv(summary, sweep);
    std::ofstream plot(dir / "weights.gp");
    write_gnuplot(plot, "weights.csv", "weights_summary.csv");
  }
  bool bounded = true;
  for (const auto& r : sweep.rows) bounded = bounded && r.within_bound;
  write_summary_csv(std::cout, sweep);
  std::cerr << "rows " << sweep.rows.size() << ", budget bound " << (bounded ? "held" : "VIOLATED") << '\n';
  return bounded ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box ranking probe: warm-up, centrality identification and weight recovery"};
  app.require_subcommand(1);

  bool drop_a5 = false;
  std::vector<int> extra_edge;
  auto* warmup = app.add_subcommand("warmup", "Reproduce the five distinct rankings of the five-node query");
  warmup->add_flag("--drop-a5", drop_a5, "Remove a5 from the query graph (negative control)");
  warmup->add_option("--extra-edge", extra_edge, "Add an edge between two query nodes, labels 1..5")->expected(2);

  std::string config_path;
  std::string out_dir;
  auto* identify = app.add_subcommand("identify", "Identify the centrality behind single-kind recipes");
  identify->add_option("--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
  identify->add_option("--out", out_dir, "Output directory for identify.csv (stdout when omitted)");

  auto* weights = app.add_subcommand("weights", "Sweep weight recovery over h2, query sizes and seeds");
  weights->add_option("--config", config_path, "Experiment config JSON")->check(CLI::ExistingFile);
  weights->add_option("--out", out_dir, "Output directory")->required();

  std::string store;
  auto* certificates = app.add_subcommand("certificates", "Search and export the pairwise certificate store");
  certificates->add_option("--out", store, "Certificate store JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*warmup) return cmd_warmup(drop_a5, extra_edge);
    if (*identify) return cmd_identify(config_path, out_dir);
    if (*weights) return cmd_weights(config_path, out_dir);
    if (*certificates) return cmd_certificates(store);
  } catch (const probe::Error& e) {
    std::cerr << e.what() << '\n';
    return is_config_error(e) ? kConfigError : kMismatch;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kMismatch;
  }
  return kOk;
}
