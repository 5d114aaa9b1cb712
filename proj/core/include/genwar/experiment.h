#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genwar/cache_backend.h"
#include "genwar/episode.h"

namespace genwar {

struct ExperimentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BackendProfile { scripted, cached, remote };

const char* backend_profile_name(BackendProfile p);
std::optional<BackendProfile> backend_profile_from_name(const std::string& name);

// What sits behind a cached profile when a key is missing.
enum class CacheUpstream { scripted, remote, dead };

struct ExperimentConfig {
  std::string scenario_path;  // empty: the built-in default scenario
  PolicyKind red = PolicyKind::rule;
  PolicyKind blue = PolicyKind::random;
  int episodes = 50;
  std::uint64_t base_seed = 1;
  RetrievalWeights weights;
  ReflectionConfig reflection;
  int max_rounds = 3;
  BackendProfile profile = BackendProfile::scripted;
  CacheUpstream cache_upstream = CacheUpstream::scripted;
  std::string cache_path;       // default: <out_dir>/cache.jsonl
  std::string expert_doc_path;  // required (and non-empty) iff a side is gwae
  std::string prompt_dir;       // optional template overrides
  std::string out_dir;          // empty: keep everything in memory
  int workers = 1;
  bool transcripts = true;
};

struct ScoreStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

struct SideSummary {
  int wins = 0;
  std::vector<double> win_rate_series;  // cumulative, one entry per episode
  ScoreStats kill, goal, survive;
};

struct MetricsReport {
  ExperimentConfig config;
  std::vector<EpisodeResult> results;
  SideSummary red, blue;
  int draws = 0;
  int failures = 0;
  std::optional<CacheStats> cache;
};

// Document fed to gwae strategic prompts: file content, trimmed. Missing,
// unreadable, or blank files are configuration errors.
std::string load_expert_doc(const std::string& path);

// Runs cfg.episodes seeded episodes (seed = base_seed + index), aggregates,
// and — when out_dir is set — writes metrics.csv, report.json, and
// per-episode transcripts beneath it.
MetricsReport run_experiment(const ExperimentConfig& cfg);

// The exact bytes of the metrics table: one fixed header plus one row per
// episode in index order.
std::string metrics_csv(const MetricsReport& report);

// Structured summary (config echo, outcome totals, win-rate series, score
// statistics, cache counters).
std::string report_json(const MetricsReport& report);

}  // namespace genwar
