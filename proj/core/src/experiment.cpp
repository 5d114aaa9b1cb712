#include "genwar/experiment.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "genwar/log.h"
#include "genwar/remote_backend.h"
#include "genwar/scripted_profile.h"
#include "json.hpp"

namespace genwar {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const char* backend_profile_name(BackendProfile p) {
  switch (p) {
    case BackendProfile::scripted: return "scripted";
    case BackendProfile::cached: return "cached";
    case BackendProfile::remote: return "remote";
  }
  return "scripted";
}

std::optional<BackendProfile> backend_profile_from_name(const std::string& name) {
  if (name == "scripted") return BackendProfile::scripted;
  if (name == "cached") return BackendProfile::cached;
  if (name == "remote") return BackendProfile::remote;
  return std::nullopt;
}

std::string load_expert_doc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExperimentError("expert document not readable: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  std::string doc = text.str();
  const auto first = doc.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ExperimentError("expert document is empty: " + path);
  const auto last = doc.find_last_not_of(" \t\r\n");
  return doc.substr(first, last - first + 1);
}

namespace {

std::string episode_dir_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "episode_%05d", index);
  return buf;
}

ScoreStats stats_over(const std::vector<double>& values) {
  ScoreStats s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return s;
}

std::shared_ptr<Backend> build_backend(const ExperimentConfig& cfg, const Scenario& scenario) {
  switch (cfg.profile) {
    case BackendProfile::scripted: return make_scripted_profile(scenario);
    case BackendProfile::remote: return std::make_shared<RemoteBackend>(RemoteOptions{});
    case BackendProfile::cached: {
      std::shared_ptr<Backend> upstream;
      switch (cfg.cache_upstream) {
        case CacheUpstream::scripted: upstream = make_scripted_profile(scenario); break;
        case CacheUpstream::remote: upstream = std::make_shared<RemoteBackend>(RemoteOptions{}); break;
        case CacheUpstream::dead: upstream = nullptr; break;
      }
      std::string path = cfg.cache_path;
      if (path.empty() && !cfg.out_dir.empty())
        path = (fs::path(cfg.out_dir) / "cache.jsonl").string();
      return std::make_shared<CachingBackend>(path, std::move(upstream));
    }
  }
  throw ExperimentError("unhandled backend profile");
}

void fill_side_summary(MetricsReport& report, Side side) {
  SideSummary& summary = side == Side::red ? report.red : report.blue;
  std::vector<double> kill, goal, survive;
  int wins = 0;
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const EpisodeResult& r = report.results[i];
    if (r.winner == side) ++wins;
    summary.win_rate_series.push_back(static_cast<double>(wins) /
                                      static_cast<double>(i + 1));
    const TaskScores& s = side == Side::red ? r.red_scores : r.blue_scores;
    kill.push_back(s.kill);
    goal.push_back(s.goal);
    survive.push_back(s.survive);
  }
  summary.wins = wins;
  summary.kill = stats_over(kill);
  summary.goal = stats_over(goal);
  summary.survive = stats_over(survive);
}

}  // namespace

MetricsReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.episodes < 0) throw ExperimentError("episode count cannot be negative");
  if (cfg.max_rounds < 1) throw ExperimentError("max_rounds must be at least 1");
  const bool gwae_run = cfg.red == PolicyKind::gwae || cfg.blue == PolicyKind::gwae;
  if (gwae_run && cfg.expert_doc_path.empty())
    throw ExperimentError("gwae runs need --expert-doc");

  Scenario scenario =
      cfg.scenario_path.empty() ? make_default_scenario() : load_scenario(cfg.scenario_path);

  AgentConfig agents;
  agents.weights = cfg.weights;
  agents.reflection = cfg.reflection;
  agents.max_rounds = cfg.max_rounds;
  if (gwae_run) agents.expert_doc = load_expert_doc(cfg.expert_doc_path);

  PromptLibrary prompts = PromptLibrary::builtin();
  if (!cfg.prompt_dir.empty()) prompts.load_directory(cfg.prompt_dir);

  const bool agents_present = is_agent_policy(cfg.red) || is_agent_policy(cfg.blue);
  std::shared_ptr<Backend> backend;
  std::shared_ptr<CachingBackend> cache;
  if (agents_present) {
    backend = build_backend(cfg, scenario);
    cache = std::dynamic_pointer_cast<CachingBackend>(backend);
  }

  if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);

  MetricsReport report;
  report.config = cfg;
  report.results.resize(cfg.episodes);
  if (cfg.episodes == 0) log_warning("experiment configured with zero episodes");

  const auto run_one = [&](int index) {
    EpisodeSetup setup;
    setup.scenario = scenario;
    setup.red = cfg.red;
    setup.blue = cfg.blue;
    setup.seed = cfg.base_seed + static_cast<std::uint64_t>(index);
    setup.agents = agents;
    setup.backend = backend;
    setup.prompts = &prompts;
    if (!cfg.out_dir.empty() && cfg.transcripts)
      setup.transcript_dir =
          (fs::path(cfg.out_dir) / "transcripts" / episode_dir_name(index)).string();
    report.results[index] = run_episode(setup);
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1 || cfg.episodes <= 1) {
    for (int i = 0; i < cfg.episodes; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, cfg.episodes); ++w)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < cfg.episodes; i = next.fetch_add(1)) run_one(i);
      });
    for (std::thread& t : pool) t.join();
  }

  for (const EpisodeResult& r : report.results) {
    if (r.failed) ++report.failures;
    if (!r.winner && !r.failed) ++report.draws;
  }
  fill_side_summary(report, Side::red);
  fill_side_summary(report, Side::blue);
  if (cache) report.cache = cache->stats();

  if (!cfg.out_dir.empty()) {
    std::ofstream csv(fs::path(cfg.out_dir) / "metrics.csv", std::ios::binary);
    csv << metrics_csv(report);
    std::ofstream json(fs::path(cfg.out_dir) / "report.json", std::ios::binary);
    json << report_json(report);
  }
  return report;
}

std::string metrics_csv(const MetricsReport& report) {
  std::string out =
      "episode,seed,winner,ticks,kill_score,goal_score,survive_score,trajectory_hash\n";
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const EpisodeResult& r = report.results[i];
    out += std::to_string(i) + ',' + std::to_string(r.seed) + ',' + winner_name(r.winner) +
           ',' + std::to_string(r.ticks) + ',' +
           std::to_string(static_cast<long long>(r.red_scores.kill)) + ',' +
           std::to_string(static_cast<long long>(r.red_scores.goal)) + ',' +
           std::to_string(static_cast<long long>(r.red_scores.survive)) + ',' +
           std::to_string(r.trajectory_hash) + '\n';
  }
  return out;
}

namespace {

ordered_json stats_json(const ScoreStats& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}};
}

ordered_json side_json(const SideSummary& s) {
  ordered_json out;
  out["wins"] = s.wins;
  out["win_rate_series"] = s.win_rate_series;
  out["kill"] = stats_json(s.kill);
  out["goal"] = stats_json(s.goal);
  out["survive"] = stats_json(s.survive);
  return out;
}

}  // namespace

std::string report_json(const MetricsReport& report) {
  const ExperimentConfig& cfg = report.config;
  ordered_json out;
  out["config"] = {{"scenario", cfg.scenario_path.empty() ? "(built-in)" : cfg.scenario_path},
                   {"red", policy_kind_name(cfg.red)},
                   {"blue", policy_kind_name(cfg.blue)},
                   {"episodes", cfg.episodes},
                   {"base_seed", cfg.base_seed},
                   {"alpha_recency", cfg.weights.alpha_recency},
                   {"alpha_importance", cfg.weights.alpha_importance},
                   {"alpha_relevance", cfg.weights.alpha_relevance},
                   {"decay", cfg.weights.decay},
                   {"retrieval_k", cfg.weights.k},
                   {"reflect_threshold", cfg.reflection.threshold},
                   {"reflection_window", cfg.reflection.window},
                   {"reflection_questions", cfg.reflection.questions},
                   {"max_rounds", cfg.max_rounds},
                   {"backend", backend_profile_name(cfg.profile)},
                   {"expert_doc", cfg.expert_doc_path}};
  out["episodes_run"] = static_cast<int>(report.results.size());
  out["red"] = side_json(report.red);
  out["blue"] = side_json(report.blue);
  out["draws"] = report.draws;
  out["failures"] = report.failures;
  if (report.cache) {
    out["cache"] = {{"hits", report.cache->hits},
                    {"misses", report.cache->misses},
                    {"loaded", report.cache->loaded}};
  }
  return out.dump(2) + "\n";
}

}  // namespace genwar
