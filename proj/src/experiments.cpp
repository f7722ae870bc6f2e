#include "probe/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "probe/error.hpp"

namespace probe {

namespace {

using nlohmann::json;

ExperimentMode parse_mode(const std::string& name) {
  if (name == "warmup") return ExperimentMode::Warmup;
  if (name == "identify") return ExperimentMode::Identify;
  if (name == "weights") return ExperimentMode::Weights;
  throw Error(Errc::ParseError, "unknown mode '" + name + "'");
}

template <typename T>
std::vector<T> scalar_or_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

std::string recipe_label(const HiddenRecipe& r) {
  if (r.kinds.size() == 1) return std::string(to_string(r.kinds.front()));
  std::ostringstream out;
  for (std::size_t i = 0; i < r.kinds.size(); ++i) {
    if (i > 0) out << '+';
    out << r.weights[i] << '*' << to_string(r.kinds[i]);
  }
  return out.str();
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ExperimentConfig default_config(ExperimentMode mode) {
  ExperimentConfig c;
  c.mode = mode;
  for (std::uint64_t s = 0; s < 20; ++s) c.seeds.push_back(s);
  if (mode == ExperimentMode::Identify) {
    c.world.sizes = {50, 100, 200};
    c.world.m = 2;
    c.kinds.assign(kBaseKinds.begin(), kBaseKinds.end());
    for (auto k : kBaseKinds) c.recipes.push_back(HiddenRecipe::single(k));
    c.seeds = {0, 1, 2};
  } else if (mode == ExperimentMode::Weights) {
    c.world.sizes = {1000};
    c.kinds = {CentralityKind::Degree, CentralityKind::Clustering};
  } else {
    c.world.type = "fixture";
  }
  return c;
}

ExperimentConfig config_from_json(const json& j) {
  try {
    const ExperimentMode mode = parse_mode(j.value("mode", std::string("weights")));
    ExperimentConfig c = default_config(mode);
    if (j.contains("world")) {
      const auto& w = j.at("world");
      c.world.type = w.value("type", c.world.type);
      if (w.contains("n")) c.world.sizes = scalar_or_list<std::size_t>(w.at("n"));
      if (w.contains("m")) c.world.m = w.at("m").get<std::size_t>();
      c.world.mean_degree = w.value("mean_degree", c.world.mean_degree);
      c.world.path = w.value("path", c.world.path);
    }
    if (j.contains("kinds")) {
      c.kinds.clear();
      for (const auto& k : j.at("kinds")) c.kinds.push_back(parse_kind(k.get<std::string>()));
    }
    if (j.contains("recipes")) {
      c.recipes.clear();
      for (const auto& r : j.at("recipes")) c.recipes.push_back(recipe_from_json(r));
    }
    if (j.contains("scripts")) c.scripts = j.at("scripts").get<std::vector<std::string>>();
    if (j.contains("h2")) c.h2_values = scalar_or_list<double>(j.at("h2"));
    if (j.contains("query_sizes")) c.query_sizes = scalar_or_list<std::size_t>(j.at("query_sizes"));
    if (j.contains("seeds")) c.seeds = scalar_or_list<std::uint64_t>(j.at("seeds"));
    c.x_max = j.value("x_max", c.x_max);
    c.reference_kind = j.value("reference_kind", c.reference_kind);
    if (j.contains("budget")) c.limits = limits_from_json(j.at("budget"));
    c.certificate_store = j.value("certificates", c.certificate_store);
    c.out_dir = j.value("out", c.out_dir);
    c.threads = j.value("threads", c.threads);

    if (c.world.type != "ba" && c.world.type != "edgelist" && c.world.type != "fixture") {
      throw Error(Errc::BadParams, "unknown world type '" + c.world.type + "'");
    }
    if (c.world.type == "edgelist" && !std::filesystem::exists(c.world.path)) {
      throw Error(Errc::BadParams, "edge list '" + c.world.path + "' does not exist");
    }
    if (c.seeds.empty()) throw Error(Errc::BadParams, "at least one seed is required");
    if (mode == ExperimentMode::Weights) {
      if (c.kinds.size() != 2 || c.scripts.size() != 2) {
        throw Error(Errc::BadParams, "the weight sweep uses two kinds and two scripts");
      }
      if (c.reference_kind >= c.kinds.size()) throw Error(Errc::BadParams, "reference_kind out of range");
      for (auto q : c.query_sizes) {
        if (q < 2) throw Error(Errc::BadParams, "query sizes must be at least 2");
      }
    }
    if (mode == ExperimentMode::Identify && c.kinds.empty()) throw Error(Errc::BadParams, "no candidate kinds");
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadParams, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("config: ") + e.what());
  }
  return config_from_json(j);
}

Graph build_world(const WorldSpec& spec, std::size_t size, std::uint64_t seed) {
  if (spec.type == "edgelist") return read_edge_list_file(spec.path);
  if (spec.type == "fixture") return warmup_fixture().world;
  const std::size_t m = spec.m ? *spec.m : ba_attachment_for_mean_degree(size, spec.mean_degree);
  return barabasi_albert(size, m, seed);
}

NodeId pick_target(const Graph& world, std::uint64_t seed) {
  if (world.node_count() == 0) throw Error(Errc::BadParams, "empty world");
  std::mt19937_64 rng(seed ^ 0x7a2d5c3b1e9f4a68ULL);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(world.node_count() - 1));
  return NodeId(pick(rng));
}

WarmupReport check_warmup(const WarmupFixture& fixture) {
  WarmupReport report;
  report.observed = warmup_rankings(fixture);
  report.expected = expected_warmup_rankings();
  report.matches = report.observed == report.expected;
  report.distinct = true;
  for (auto a = report.observed.begin(); a != report.observed.end(); ++a) {
    for (auto b = std::next(a); b != report.observed.end(); ++b) {
      if (a->second == b->second) report.distinct = false;
    }
  }
  return report;
}

void print_warmup(std::ostream& out, const WarmupReport& report) {
  std::vector<std::string> labels;
  for (int i = 1; i <= 5; ++i) labels.push_back("a" + std::to_string(i));
  for (const auto& [kind, ranking] : report.observed) {
    const auto& want = report.expected.at(kind);
    out << std::left << std::setw(13) << to_string(kind) << format_ranking(ranking, labels);
    if (!(ranking == want)) out << "   expected " << format_ranking(want, labels);
    out << '\n';
  }
  if (!report.distinct) out << "rankings are not pairwise distinct\n";
  out << (report.pass() ? "PASS" : "FAIL") << '\n';
}

CertificateSet obtain_certificates(std::span<const CentralityKind> kinds, const std::string& store_path) {
  if (!store_path.empty() && std::filesystem::exists(store_path)) {
    std::ifstream in(store_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, std::string("certificate store: ") + e.what());
    }
    CertificateSet stored = certificates_from_json(j);
    for (const auto& [pair, cert] : stored) {
      if (!validate_certificate(cert)) {
        throw Error(Errc::ParseError, "stored certificate for " + std::string(to_string(pair.first)) + "/" +
                                          std::string(to_string(pair.second)) + " does not hold");
      }
    }
    return stored;
  }
  CertificateSet certs = find_pairwise_certificates(kinds, robust_search_options());
  if (!store_path.empty()) {
    std::ofstream out(store_path);
    if (!out) throw Error(Errc::BadParams, "cannot write certificate store '" + store_path + "'");
    out << certificates_to_json(certs).dump(1) << '\n';
  }
  return certs;
}

IdentifyCampaign run_identify(const ExperimentConfig& config, const CertificateSet& certs) {
  struct Job {
    std::size_t size;
    std::uint64_t seed;
    std::size_t recipe;
  };
  std::vector<Job> jobs;
  for (auto n : config.world.sizes) {
    for (auto s : config.seeds) {
      for (std::size_t r = 0; r < config.recipes.size(); ++r) jobs.push_back({n, s, r});
    }
  }
  IdentifyCampaign result;
  result.rows.resize(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t idx) {
    const Job& job = jobs[idx];
    const Graph world = build_world(config.world, job.size, job.seed);
    const HiddenRecipe& recipe = config.recipes[job.recipe];
    IdentifyRow row;
    row.world_size = world.node_count();
    row.seed = job.seed;
    row.recipe = recipe_label(recipe);
    row.scored = recipe.kinds.size() == 1 &&
                 std::find(config.kinds.begin(), config.kinds.end(), recipe.kinds.front()) != config.kinds.end();
    OracleSession session(world, pick_target(world, job.seed), recipe, config.limits);
    try {
      const auto out = identify_centrality(session, config.kinds, certs);
      row.verdict = std::string(to_string(out.kind));
      row.correct = row.scored && recipe.kinds.front() == out.kind;
    } catch (const Error& e) {
      if (e.code() != Errc::Ambiguous && e.code() != Errc::BudgetExceeded) throw;
      row.verdict = to_string(e.code());
    }
    row.budget = session.budget_report();
    result.rows[idx] = std::move(row);
  });
  std::sort(result.rows.begin(), result.rows.end(), [](const IdentifyRow& a, const IdentifyRow& b) {
    return std::tie(a.world_size, a.seed, a.recipe) < std::tie(b.world_size, b.seed, b.recipe);
  });
  for (const auto& row : result.rows) {
    if (row.scored) {
      ++result.scored;
      if (row.correct) ++result.correct;
    }
  }
  return result;
}

void write_identify_csv(std::ostream& out, const IdentifyCampaign& result) {
  out << "world_size,seed,recipe,verdict,correct,profile_creations,pair_actions,rank_queries\n";
  for (const auto& r : result.rows) {
    out << r.world_size << ',' << r.seed << ',' << r.recipe << ',' << r.verdict << ',' << (r.correct ? 1 : 0) << ','
        << r.budget.profile_creations << ',' << r.budget.pair_actions << ',' << r.budget.rank_queries << '\n';
  }
}

OperationScript script_by_name(const std::string& name, std::size_t query_size) {
  const std::size_t fan = query_size - 1;
  if (name == "clustering") return clustering_script(fan);
  if (name == "leaf") return leaf_script(fan);
  if (name == "single") return single_action_script();
  if (name.rfind("neighbors", 0) == 0) {
    const auto per = name.size() > 9 ? std::stoul(name.substr(9)) : 1UL;
    return neighbor_script(per);
  }
  throw Error(Errc::ParseError, "unknown script '" + name + "'");
}

WeightRow run_weight_point(const Graph& world, NodeId target, const std::vector<CentralityKind>& kinds,
                           const std::vector<double>& true_h, const ExperimentConfig& config, std::size_t query_size,
                           std::uint64_t seed) {
  WeightRow row;
  row.h2 = true_h.size() > 1 ? true_h[1] : 0.0;
  row.query_size = query_size;
  row.seed = seed;
  row.true_h = true_h;
  OracleSession session(world, target, HiddenRecipe{kinds, true_h}, config.limits);
  std::vector<OperationScript> scripts;
  for (const auto& name : config.scripts) scripts.push_back(script_by_name(name, query_size));
  EstimateOptions options;
  options.x_max = config.x_max;
  options.reference_kind = config.reference_kind;
  options.seed = seed;
  try {
    const WeightRun run = estimate_weights(session, kinds, std::move(scripts), options);
    row.est_h.assign(run.estimate.h_hat.data(), run.estimate.h_hat.data() + run.estimate.h_hat.size());
    row.residual = run.estimate.residual;
    row.thresholds = run.thresholds;
    row.preparation_pair_actions = run.preparation_pair_actions;
    row.operation_pair_actions = run.operation_pair_actions;
    row.cost_bound = run.cost_bound;
    row.within_bound = run.within_bound();
  } catch (const Error& e) {
    row.status = to_string(e.code());
    row.residual = std::nan("");
  }
  row.budget = session.budget_report();
  return row;
}

std::vector<WeightCell> summarize(const std::vector<WeightRow>& rows) {
  std::map<std::pair<double, std::size_t>, std::vector<const WeightRow*>> groups;
  for (const auto& r : rows) groups[{r.h2, r.query_size}].push_back(&r);
  std::vector<WeightCell> cells;
  for (const auto& [key, members] : groups) {
    WeightCell cell;
    cell.h2 = key.first;
    cell.query_size = key.second;
    std::vector<double> est;
    double residual = 0.0;
    for (const auto* r : members) {
      if (r->status != "ok" || r->est_h.size() < 2) continue;
      est.push_back(r->est_h[1]);
      residual += r->residual;
    }
    cell.runs = est.size();
    if (!est.empty()) {
      double sum = 0.0;
      for (double e : est) sum += e;
      cell.mean = sum / static_cast<double>(est.size());
      cell.mean_residual = residual / static_cast<double>(est.size());
      if (est.size() > 1) {
        // Shifted by the first sample so identical runs give exactly zero.
        const double n = static_cast<double>(est.size());
        double shift_sum = 0.0;
        double shift_sq = 0.0;
        for (double e : est) {
          shift_sum += e - est.front();
          shift_sq += (e - est.front()) * (e - est.front());
        }
        cell.stdev = std::sqrt(std::max(0.0, (shift_sq - shift_sum * shift_sum / n) / (n - 1.0)));
      }
    } else {
      cell.mean = cell.stdev = cell.mean_residual = std::nan("");
    }
    cells.push_back(cell);
  }
  return cells;
}

WeightSweep run_weights(const ExperimentConfig& config) {
  struct Job {
    double h2;
    std::size_t q;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double h2 : config.h2_values) {
    for (auto q : config.query_sizes) {
      for (auto s : config.seeds) jobs.push_back({h2, q, s});
    }
  }
  // One world per seed, shared read-only across cells.
  std::map<std::uint64_t, std::pair<Graph, NodeId>> worlds;
  for (auto s : config.seeds) {
    Graph w = build_world(config.world, config.world.sizes.front(), s);
    const NodeId t = pick_target(w, s);
    worlds.emplace(s, std::make_pair(std::move(w), t));
  }
  WeightSweep sweep;
  sweep.rows.resize(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t idx) {
    const Job& job = jobs[idx];
    std::vector<double> h(config.kinds.size(), 1.0);
    h[1] = job.h2;
    const auto& [world, target] = worlds.at(job.seed);
    sweep.rows[idx] = run_weight_point(world, target, config.kinds, h, config, job.q, job.seed);
  });
  std::sort(sweep.rows.begin(), sweep.rows.end(), [](const WeightRow& a, const WeightRow& b) {
    return std::tie(a.h2, a.query_size, a.seed) < std::tie(b.h2, b.query_size, b.seed);
  });
  sweep.cells = summarize(sweep.rows);
  return sweep;
}

void write_weights_csv(std::ostream& out, const WeightSweep& sweep, std::size_t d) {
  out << "seed,querySize";
  for (std::size_t i = 0; i < d; ++i) out << ",true_h" << i;
  for (std::size_t i = 0; i < d; ++i) out << ",est_h" << i;
  out << ",residual,pair_actions,rank_queries,preparation_pair_actions,operation_pair_actions,cost_bound,within_bound,"
         "status\n";
  out << std::setprecision(10);
  for (const auto& r : sweep.rows) {
    out << r.seed << ',' << r.query_size;
    for (std::size_t i = 0; i < d; ++i) out << ',' << (i < r.true_h.size() ? r.true_h[i] : std::nan(""));
    for (std::size_t i = 0; i < d; ++i) out << ',' << (i < r.est_h.size() ? r.est_h[i] : std::nan(""));
    out << ',' << r.residual << ',' << r.budget.pair_actions << ',' << r.budget.rank_queries << ','
        << r.preparation_pair_actions << ',' << r.operation_pair_actions << ',' << r.cost_bound << ','
        << (r.within_bound ? 1 : 0) << ',' << r.status << '\n';
  }
}

void write_summary_csv(std::ostream& out, const WeightSweep& sweep) {
  out << "h2,querySize,runs,mean_est_h2,stdev_est_h2,mean_residual\n" << std::setprecision(10);
  for (const auto& c : sweep.cells) {
    out << c.h2 << ',' << c.query_size << ',' << c.runs << ',' << c.mean << ',' << c.stdev << ',' << c.mean_residual
        << '\n';
  }
}

void write_gnuplot(std::ostream& out, const std::string& rows_csv, const std::string& summary_csv) {
  out << "set datafile separator ','\n"
         "set key autotitle columnhead left top\n"
         "set xlabel 'true h2'\n"
         "set ylabel 'estimated h2'\n"
         "set xrange [0.5:5.5]\n"
         "set terminal pngcairo size 900,650\n"
         "set output 'weights.png'\n"
         "plot x title 'y = x' lw 1 dt 2, \\\n"
         "     '" << summary_csv << "' using 1:4:5 with yerrorbars title 'mean +- stdev', \\\n"
         "     '" << rows_csv << "' using 4:6 with points pt 7 ps 0.4 title 'runs'\n";
}

}  // namespace probe
