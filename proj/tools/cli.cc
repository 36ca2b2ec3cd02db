// Copyright 2026 The cwm-verify Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <charconv>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "cwm/candidate.h"
#include "cwm/errors.h"
#include "cwm/registry.h"
#include "cwm/report.h"
#include "cwm/reward.h"
#include "cwm/solver/match.h"
#include "cwm/tier_scenarios.h"

#ifndef CWM_SCENARIOS_DIR
#define CWM_SCENARIOS_DIR "scenarios"
#endif

namespace cwm::cli {
namespace {

namespace fs = std::filesystem;

// Bad flags or inputs; exits with kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string game;
  std::vector<std::string> params;
  std::string candidate;
  std::string scenarios;
  std::string adapter;
  int call_timeout_ms = 5000;
};

std::string DefaultScenariosDir() {
  if (const char* env = std::getenv("CWM_SCENARIOS_DIR"); env && *env) {
    return env;
  }
  std::error_code ec;
  const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const fs::path installed =
        exe.parent_path().parent_path() / "share" / "cwm" / "scenarios";
    if (fs::is_directory(installed, ec)) return installed.string();
  }
  return CWM_SCENARIOS_DIR;
}

std::string ScenarioPathFor(const std::string& dir, const std::string& game) {
  return (fs::path(dir) / (game + ".scenarios.json")).string();
}

GameParams ParseParams(const std::vector<std::string>& items) {
  GameParams params;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--param expects key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    int value = 0;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw UsageError("--param " + key + " expects an integer, got '" +
                       text + "'");
    }
    params[key] = value;
  }
  return params;
}

ReferenceGame ResolveGame(const std::string& name, const GameParams& params) {
  try {
    return MakeGame(name, params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

AdapterOptions MakeAdapterOptions(const CommonOptions& options) {
  AdapterOptions adapter;
  if (!options.adapter.empty()) adapter.command = SplitCommand(options.adapter);
  adapter.call_timeout = std::chrono::milliseconds(options.call_timeout_ms);
  return adapter;
}

ScenarioFile LoadScenariosFor(const std::string& path,
                              const ReferenceGame& game) {
  ScenarioFile file;
  try {
    file = LoadScenarioFile(path);
  } catch (const ScenarioParseError& e) {
    throw UsageError(e.what());
  } catch (const HarnessError& e) {
    throw UsageError(e.what());
  }
  if (file.game != game.spec.name) {
    throw UsageError(path + ": scenarios are for game '" + file.game +
                     "', not '" + game.spec.name + "'");
  }
  return file;
}

struct Resolved {
  ReferenceGame game;
  GameParams params;
  Candidate candidate;
  std::string scenarios_path;
};

Resolved ResolveCommon(const CommonOptions& options) {
  Resolved resolved{.game = {}, .params = ParseParams(options.params),
                    .candidate = {}, .scenarios_path = options.scenarios};
  resolved.game = ResolveGame(options.game, resolved.params);
  const std::string descriptor = options.candidate.empty()
                                     ? kBuiltinPrefix + options.game
                                     : options.candidate;
  try {
    resolved.candidate =
        ResolveCandidate(descriptor, resolved.game, MakeAdapterOptions(options));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (resolved.scenarios_path.empty()) {
    resolved.scenarios_path =
        ScenarioPathFor(DefaultScenariosDir(), options.game);
  }
  return resolved;
}

void AddCommonOptions(CLI::App& command, CommonOptions& options,
                      bool with_scenarios) {
  command.add_option("--game", options.game, "Registered game name")
      ->required();
  command.add_option("--param", options.params,
                     "Game parameter key=value (repeatable)");
  command.add_option("--candidate", options.candidate,
                     "builtin:NAME or a candidate file served by the adapter "
                     "(default builtin:<game>)");
  if (with_scenarios) {
    command.add_option("--scenarios", options.scenarios,
                       "Scenario file (default <scenarios>/<game>.scenarios."
                       "json)");
  }
  command.add_option("--adapter", options.adapter,
                     "Adapter command (default $CWM_ADAPTER or '" +
                         std::string(kDefaultAdapter) + "')");
  command.add_option("--call-timeout", options.call_timeout_ms,
                     "Per-call adapter timeout in milliseconds")
      ->check(CLI::PositiveNumber);
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw HarnessError("cannot write " + path);
  out << text;
  if (!out.flush()) throw HarnessError("cannot write " + path);
}

std::string Fixed(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << value;
  return out.str();
}

void PrintTier(std::ostream& out, const TierReport& tier) {
  out << std::left << std::setw(12) << TierName(tier.tier) << std::right
      << std::setw(3) << tier.passed_count() << "/" << std::left
      << std::setw(3) << tier.total_count() << " " << Fixed(tier.score())
      << "\n";
  for (const Check& check : tier.checks) {
    if (!check.passed) out << "    FAIL " << check.name << "\n";
  }
  for (const std::string& note : tier.diagnostics) {
    out << "    note: " << note << "\n";
  }
}

int Verify(const CommonOptions& common, const EvaluateConfig& config,
           const std::string& json_path, std::ostream& out) {
  const Resolved r = ResolveCommon(common);
  const ScenarioFile scenarios = LoadScenariosFor(r.scenarios_path, r.game);
  const Evaluation evaluation =
      Evaluate(r.candidate, r.game.spec, scenarios, config);

  VerificationReport report;
  report.command = "verify";
  report.game = r.game.spec.name;
  report.game_params = r.params;
  report.candidate = r.candidate.descriptor;
  report.config = {{"fuzz_n", config.fuzz_n},
                   {"info_n", config.info_n},
                   {"seed", config.seed},
                   {"tier_timeout_seconds", config.tier_timeout_seconds},
                   {"call_timeout_ms", common.call_timeout_ms},
                   {"scenarios", r.scenarios_path}};
  report.tiers = evaluation.tiers;
  report.evaluate_mean = evaluation.exact_mean;
  report.reward = GatedReward(evaluation, r.game.spec);
  for (const auto& [tier, ms] : evaluation.timings_ms) {
    report.timings_ms[std::string(TierName(tier))] = ms;
  }

  out << "game " << report.game << "  candidate " << report.candidate << "\n";
  for (const TierReport& tier : evaluation.tiers) PrintTier(out, tier);
  if (evaluation.stub) out << "resampler is a stub\n";
  out << "mean   " << Fixed(evaluation.mean()) << "\n";
  out << "reward " << FormatReward(report.reward.reward()) << "\n";
  if (!json_path.empty()) WriteFile(json_path, report.ToJson());
  return kExitOk;
}

int Reward(const CommonOptions& common, const RewardConfig& config,
           const std::string& json_path, std::ostream& out) {
  const Resolved r = ResolveCommon(common);
  const ScenarioFile scenarios = LoadScenariosFor(r.scenarios_path, r.game);
  const auto start = std::chrono::steady_clock::now();
  const RewardBreakdown breakdown =
      ComputeReward(r.candidate, r.game.spec, scenarios, config);
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;

  if (json_path.empty()) {
    for (const std::string& note : breakdown.diagnostics) {
      out << "note: " << note << "\n";
    }
  } else {
    VerificationReport report;
    report.command = "reward";
    report.game = r.game.spec.name;
    report.game_params = r.params;
    report.candidate = r.candidate.descriptor;
    report.config = {{"n", config.n},
                     {"timeout_seconds", config.timeout_seconds},
                     {"seed", config.seed},
                     {"call_timeout_ms", common.call_timeout_ms},
                     {"scenarios", r.scenarios_path}};
    report.reward = breakdown;
    report.timings_ms["total"] = elapsed.count();
    WriteFile(json_path, report.ToJson());
  }
  out << FormatReward(breakdown.reward()) << "\n";
  return kExitOk;
}

int Play(const CommonOptions& common, const std::string& agent0_text,
         const std::string& agent1_text, int n_games, std::uint64_t seed,
         const std::string& json_path, std::ostream& out) {
  const Resolved r = ResolveCommon(common);
  AgentSpec agent0;
  AgentSpec agent1;
  try {
    agent0 = AgentSpec::Parse(agent0_text);
    agent1 = AgentSpec::Parse(agent1_text);
    agent0.CheckCompatible(r.game.spec);
    agent1.CheckCompatible(r.game.spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const MatchReport report =
      PlayMatch(r.candidate.Factory(Deadline::Never()), r.game.spec, agent0,
                agent1, n_games, seed);
  out << "game " << r.game.spec.name << "  candidate "
      << r.candidate.descriptor << "\n";
  out << "agent0 " << report.agent0 << " vs agent1 " << report.agent1 << "\n";
  out << "games " << report.games_played << "/" << report.games_requested
      << "  wins " << report.wins << "  draws " << report.draws
      << "  losses " << report.losses << "\n";
  out << "mean rewards " << report.mean_rewards[0] << " "
      << report.mean_rewards[1] << "\n";
  if (report.incomplete) out << "incomplete: " << report.error << "\n";
  if (!json_path.empty()) {
    WriteFile(json_path, report.ToValue().dump(2) + "\n");
  }
  return kExitOk;
}

struct ServeOptions {
  std::string games_dir = ".";
  std::string scenarios_dir;
  int parallel = 1;
  RewardConfig reward;
  std::string adapter;
  int call_timeout_ms = 5000;
};

struct ServeJob {
  Value id;
  std::string game;
  GameParams params;
  std::string candidate_path;
};

class RewardService {
 public:
  RewardService(const ServeOptions& options, std::ostream& out)
      : options_(options), out_(out) {}

  void Run(std::istream& in) {
    std::vector<std::thread> workers;
    for (int i = 0; i < options_.parallel; ++i) {
      workers.emplace_back([this] { Work(); });
    }
    for (std::string line; std::getline(in, line);) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::optional<ServeJob> job = ParseRequest(line);
      if (!job) continue;
      std::lock_guard<std::mutex> lock(queue_mu_);
      queue_.push_back(std::move(*job));
      queue_cv_.notify_one();
    }
    {
      std::lock_guard<std::mutex> lock(queue_mu_);
      closed_ = true;
    }
    queue_cv_.notify_all();
    for (std::thread& worker : workers) worker.join();
  }

 private:
  std::optional<ServeJob> ParseRequest(const std::string& line) {
    Value request;
    try {
      request = Value::parse(line);
    } catch (const Value::parse_error& e) {
      Respond({{"id", nullptr}, {"error", std::string("malformed request: ") +
                                              e.what()}});
      return std::nullopt;
    }
    if (!request.is_object() || !request.contains("id") ||
        request["id"].is_null()) {
      Respond({{"id", nullptr}, {"error", "request must be an object with an id"}});
      return std::nullopt;
    }
    ServeJob job;
    job.id = request["id"];
    try {
      job.game = request.at("game").get<std::string>();
      job.candidate_path = request.at("candidate_path").get<std::string>();
      if (request.contains("params")) {
        job.params = request["params"].get<GameParams>();
      }
    } catch (const Value::exception& e) {
      Respond({{"id", job.id},
               {"error", std::string("malformed request: ") + e.what()}});
      return std::nullopt;
    }
    return job;
  }

  void Work() {
    for (;;) {
      ServeJob job;
      {
        std::unique_lock<std::mutex> lock(queue_mu_);
        queue_cv_.wait(lock, [this] { return closed_ || !queue_.empty(); });
        if (queue_.empty()) return;
        job = std::move(queue_.front());
        queue_.pop_front();
      }
      Respond(Handle(job));
    }
  }

  Value Handle(const ServeJob& job) {
    try {
      const ReferenceGame game = MakeGame(job.game, job.params);
      const ScenarioFile scenarios = LoadScenariosFor(
          ScenarioPathFor(options_.scenarios_dir, job.game), game);
      fs::path path(job.candidate_path);
      if (path.is_relative()) path = fs::path(options_.games_dir) / path;
      AdapterOptions adapter;
      if (!options_.adapter.empty()) {
        adapter.command = SplitCommand(options_.adapter);
      }
      adapter.call_timeout =
          std::chrono::milliseconds(options_.call_timeout_ms);
      const RewardBreakdown breakdown =
          ComputeReward(AdapterCandidate(path.string(), adapter), game.spec,
                        scenarios, options_.reward);
      return {{"id", job.id},
              {"reward", breakdown.reward()},
              {"breakdown", breakdown.ToValue()}};
    } catch (const std::exception& e) {
      return {{"id", job.id}, {"error", e.what()}};
    }
  }

  void Respond(const Value& response) {
    const std::string line = response.dump(
        -1, ' ', false, nlohmann::json::error_handler_t::replace);
    std::lock_guard<std::mutex> lock(out_mu_);
    out_ << line << "\n" << std::flush;
  }

  const ServeOptions& options_;
  std::ostream& out_;
  std::mutex out_mu_;
  std::mutex queue_mu_;
  std::condition_variable queue_cv_;
  std::deque<ServeJob> queue_;
  bool closed_ = false;
};

int Serve(const ServeOptions& options, std::istream& in, std::ostream& out) {
  RewardService service(options, out);
  service.Run(in);
  return kExitOk;
}

}  // namespace

std::string FormatReward(double reward) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), reward);
  std::string text(buffer, ec == std::errc() ? end : buffer);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app("Verification, fuzzing and reward harness for game code world "
               "models",
               "cwm");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(HarnessVersion()));

  CommonOptions common;
  EvaluateConfig evaluate;
  RewardConfig reward;
  ServeOptions serve;
  std::string json_path;
  std::string agent0 = "random";
  std::string agent1 = "random";
  int n_games = 100;
  std::uint64_t play_seed = 0;

  CLI::App* verify = app.add_subcommand("verify", "Run all four tiers");
  AddCommonOptions(*verify, common, true);
  verify->add_option("--fuzz-n", evaluate.fuzz_n, "Dynamics walks")
      ->check(CLI::PositiveNumber);
  verify->add_option("--info-n", evaluate.info_n, "Information probes")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", evaluate.seed, "RNG seed");
  verify->add_option("--tier-timeout", evaluate.tier_timeout_seconds,
                     "Seconds per tier")
      ->check(CLI::PositiveNumber);
  verify->add_option("--json", json_path, "Write the report here");

  CLI::App* reward_cmd =
      app.add_subcommand("reward", "Compute the gated scalar reward");
  AddCommonOptions(*reward_cmd, common, true);
  reward_cmd->add_option("--n", reward.n, "Dynamics walks")
      ->check(CLI::PositiveNumber);
  reward_cmd->add_option("--timeout", reward.timeout_seconds,
                         "Whole-pipeline timeout in seconds")
      ->check(CLI::PositiveNumber);
  reward_cmd->add_option("--seed", reward.seed, "RNG seed");
  reward_cmd->add_option("--json", json_path, "Write the report here");

  CLI::App* serve_cmd = app.add_subcommand(
      "serve", "Answer NDJSON reward requests from stdin");
  serve_cmd->add_option("--games-dir", serve.games_dir,
                        "Base directory for relative candidate paths");
  serve_cmd->add_option("--scenarios-dir", serve.scenarios_dir,
                        "Directory of <game>.scenarios.json files");
  serve_cmd->add_option("--parallel", serve.parallel, "Concurrent requests")
      ->check(CLI::Range(1, 256));
  serve_cmd->add_option("--n", serve.reward.n, "Dynamics walks")
      ->check(CLI::PositiveNumber);
  serve_cmd->add_option("--timeout", serve.reward.timeout_seconds,
                        "Per-request timeout in seconds")
      ->check(CLI::PositiveNumber);
  serve_cmd->add_option("--seed", serve.reward.seed, "RNG seed");
  serve_cmd->add_option("--adapter", serve.adapter, "Adapter command");
  serve_cmd->add_option("--call-timeout", serve.call_timeout_ms,
                        "Per-call adapter timeout in milliseconds")
      ->check(CLI::PositiveNumber);

  CLI::App* play = app.add_subcommand("play", "Play agents against each other");
  AddCommonOptions(*play, common, false);
  play->add_option("--agent0", agent0, "random | mcts:sims=N | ismcts:sims=N");
  play->add_option("--agent1", agent1, "random | mcts:sims=N | ismcts:sims=N");
  play->add_option("--games", n_games, "Number of games")
      ->check(CLI::PositiveNumber);
  play->add_option("--seed", play_seed, "RNG seed");
  play->add_option("--json", json_path, "Write the match report here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return Verify(common, evaluate, json_path, out);
    if (reward_cmd->parsed()) return Reward(common, reward, json_path, out);
    if (play->parsed()) {
      return Play(common, agent0, agent1, n_games, play_seed, json_path, out);
    }
    if (serve.scenarios_dir.empty()) serve.scenarios_dir = DefaultScenariosDir();
    return Serve(serve, in, out);
  } catch (const UsageError& e) {
    err << "cwm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "cwm: harness fault: " << e.what() << "\n";
    return kExitHarness;
  }
}

}  // namespace cwm::cli
