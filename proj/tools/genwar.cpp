// genwar CLI: seeded experiment batches (rule / random / gwa / gwae sides)
// and scenario management.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "genwar/experiment.h"
#include "genwar/scenario.h"

namespace {

int cmd_run(const genwar::ExperimentConfig& cfg) {
  const genwar::MetricsReport report = genwar::run_experiment(cfg);
  const int n = static_cast<int>(report.results.size());
  std::printf("episodes: %d  red wins: %d  blue wins: %d  draws: %d  failures: %d\n", n,
              report.red.wins, report.blue.wins, report.draws, report.failures);
  if (n > 0)
    std::printf("red win rate: %.3f   red scores (kill/goal/survive): %.0f / %.0f / %.0f\n",
                report.red.win_rate_series.back(), report.red.kill.mean, report.red.goal.mean,
                report.red.survive.mean);
  if (report.cache)
    std::printf("cache: %llu hits, %llu misses, %llu preloaded\n",
                static_cast<unsigned long long>(report.cache->hits),
                static_cast<unsigned long long>(report.cache->misses),
                static_cast<unsigned long long>(report.cache->loaded));
  if (!cfg.out_dir.empty())
    std::printf("wrote %s/metrics.csv and %s/report.json\n", cfg.out_dir.c_str(),
                cfg.out_dir.c_str());
  return 0;
}

int cmd_scenario(const std::string& out_path) {
  const genwar::Scenario sc = genwar::make_default_scenario();
  if (out_path.empty() || out_path == "-") {
    genwar::save_scenario(sc, std::cout);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::fprintf(stderr, "genwar: cannot write %s\n", out_path.c_str());
    return 1;
  }
  genwar::save_scenario(sc, out);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turn-based wargame experiments driven by generative agents"};
  app.require_subcommand(1);

  genwar::ExperimentConfig cfg;
  std::string red = "rule", blue = "random", backend = "scripted", upstream = "scripted";
  bool no_transcripts = false;

  CLI::App* run = app.add_subcommand("run", "run a seeded episode batch");
  run->add_option("--scenario", cfg.scenario_path, "scenario JSON (default: built-in map)");
  run->add_option("--red", red, "red side policy")
      ->check(CLI::IsMember({"gwa", "gwae", "rule", "random"}));
  run->add_option("--blue", blue, "blue side policy")
      ->check(CLI::IsMember({"gwa", "gwae", "rule", "random"}));
  run->add_option("--episodes", cfg.episodes, "episode count")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", cfg.base_seed, "base seed (episode i uses seed+i)");
  run->add_option("--backend", backend, "backend profile")
      ->check(CLI::IsMember({"scripted", "cached", "remote"}));
  run->add_option("--alpha-recency", cfg.weights.alpha_recency, "retrieval recency weight");
  run->add_option("--alpha-importance", cfg.weights.alpha_importance,
                  "retrieval importance weight");
  run->add_option("--alpha-relevance", cfg.weights.alpha_relevance,
                  "retrieval relevance weight");
  run->add_option("--decay", cfg.weights.decay, "per-tick recency decay");
  run->add_option("--top-k", cfg.weights.k, "memories retrieved per query");
  run->add_option("--reflect-threshold", cfg.reflection.threshold,
                  "accumulated importance that triggers reflection");
  run->add_option("--reflect-window", cfg.reflection.window,
                  "recent memories shown to the reflection question prompt");
  run->add_option("--reflect-questions", cfg.reflection.questions,
                  "questions (and insights) per reflection");
  run->add_option("--max-rounds", cfg.max_rounds, "negotiation round cap")
      ->check(CLI::PositiveNumber);
  run->add_option("--expert-doc", cfg.expert_doc_path,
                  "domain document for gwae strategic prompts");
  run->add_option("--out", cfg.out_dir, "output directory (metrics.csv, report.json, transcripts/)");
  run->add_option("--prompts", cfg.prompt_dir, "directory of prompt template overrides");
  run->add_option("--cache", cfg.cache_path, "cache file for the cached backend");
  run->add_option("--cache-upstream", upstream, "what a cached backend asks on a miss")
      ->check(CLI::IsMember({"scripted", "remote", "dead"}));
  run->add_option("--workers", cfg.workers, "parallel episode workers")
      ->check(CLI::PositiveNumber);
  run->add_flag("--no-transcripts", no_transcripts, "skip per-episode transcript output");

  std::string scenario_out = "-";
  CLI::App* scenario = app.add_subcommand("scenario", "emit the built-in scenario as JSON");
  scenario->add_option("--out", scenario_out, "output file ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cfg.red = *genwar::policy_kind_from_name(red);
      cfg.blue = *genwar::policy_kind_from_name(blue);
      cfg.profile = *genwar::backend_profile_from_name(backend);
      cfg.cache_upstream = upstream == "remote"  ? genwar::CacheUpstream::remote
                           : upstream == "dead" ? genwar::CacheUpstream::dead
                                                : genwar::CacheUpstream::scripted;
      cfg.transcripts = !no_transcripts;
      return cmd_run(cfg);
    }
    return cmd_scenario(scenario_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "genwar: %s\n", e.what());
    return 1;
  }
}
