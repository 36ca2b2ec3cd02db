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

#include "cwm/tier_information.h"

#include <algorithm>
#include <cctype>
#include <memory>
#include <regex>
#include <stdexcept>

#include "cwm/errors.h"
#include "cwm/rng.h"

namespace cwm {
namespace {

struct Entry {
  Fingerprint observation;
  std::optional<ActionId> action;
};

std::vector<Entry> HistoryOf(const WalkRecord& walk, PlayerId player) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i + 1 < walk.steps.size(); ++i) {
    const WalkStep& step = walk.steps[i];
    if (step.acting_player == player && step.action) {
      entries.push_back({step.observations.at(player), step.action});
    }
  }
  entries.push_back({walk.current().observations.at(player), std::nullopt});
  return entries;
}

void Mark(ProbeOutcome& out, bool ProbeOutcome::*field,
          const std::string& message) {
  out.*field = false;
  if (out.failure.empty()) out.failure = message;
}

}  // namespace

void ProbeConfig::Validate() const {
  if (n_probes < 1) throw std::invalid_argument("n_probes must be at least 1");
  if (max_walk_steps < 0) {
    throw std::invalid_argument("max_walk_steps must be non-negative");
  }
}

ProbeOutcome CheckResampledTrajectory(Session& session, const GameSpec& spec,
                                      const WalkRecord& walk, PlayerId player,
                                      const std::vector<ActionId>& trajectory) {
  ProbeOutcome out;
  const std::vector<Entry> history = HistoryOf(walk, player);
  const std::size_t n_turns = history.size() - 1;
  std::size_t consumed = 0;

  auto observation_at = [&](StateHandle state) {
    return CanonicalFingerprint(
        ObservationsOf(session, state, spec.n_players).at(player));
  };

  try {
    StateHandle state = session.InitialState().state;
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
      const ActionId& action = trajectory[i];
      const PlayerId current = CurrentPlayerOf(session, state);
      const auto legal = LegalActionsOf(session, state);
      if (current == player && !IsChanceNode(spec, current, legal)) {
        if (consumed >= n_turns) {
          Mark(out, &ProbeOutcome::resample_complete,
               "trajectory continues past the recorded history at action " +
                   std::to_string(i));
          Mark(out, &ProbeOutcome::action_consistency,
               "resampled action '" + action + "' where none was recorded");
          if (observation_at(state) != history[n_turns].observation) {
            Mark(out, &ProbeOutcome::obs_reconstruction,
                 "observation mismatch at extra turn");
          }
        } else {
          if (observation_at(state) != history[consumed].observation) {
            Mark(out, &ProbeOutcome::obs_reconstruction,
                 "observation mismatch at recorded turn " +
                     std::to_string(consumed));
          }
          if (action != *history[consumed].action) {
            Mark(out, &ProbeOutcome::action_consistency,
                 "resampled '" + action + "' but '" +
                     *history[consumed].action + "' was recorded at turn " +
                     std::to_string(consumed));
          }
        }
        ++consumed;
      }
      if (std::find(legal.begin(), legal.end(), action) == legal.end()) {
        Mark(out, &ProbeOutcome::resample_legal,
             "resampled action '" + action + "' is not legal at position " +
                 std::to_string(i));
        break;
      }
      state = session.ApplyAction(state, action).new_state;
      if (i + 1 == trajectory.size() && consumed == n_turns &&
          observation_at(state) != history[n_turns].observation) {
        Mark(out, &ProbeOutcome::obs_reconstruction,
             "final observation does not match");
      }
    }
    if (trajectory.empty() && n_turns == 0 &&
        observation_at(state) != history[0].observation) {
      Mark(out, &ProbeOutcome::obs_reconstruction,
           "final observation does not match");
    }
  } catch (const CandidateError& e) {
    const std::string message =
        std::string("replay ") + std::string(ErrorKindName(e.kind())) + ": " +
        e.what();
    Mark(out, &ProbeOutcome::resample_legal, message);
    Mark(out, &ProbeOutcome::obs_reconstruction, message);
    Mark(out, &ProbeOutcome::action_consistency, message);
    Mark(out, &ProbeOutcome::resample_complete, message);
    return out;
  }

  if (consumed < n_turns) {
    const std::string message = "replay reached " + std::to_string(consumed) +
                                " of " + std::to_string(n_turns) +
                                " recorded turns";
    Mark(out, &ProbeOutcome::obs_reconstruction, message);
    Mark(out, &ProbeOutcome::action_consistency, message);
    Mark(out, &ProbeOutcome::resample_complete, message);
  }
  return out;
}

namespace {

class InformationProber {
 public:
  InformationProber(const SessionFactory& factory, const ProbeConfig& config,
                    const GameSpec& spec)
      : factory_(factory),
        config_(config),
        spec_(spec),
        max_steps_(config.max_walk_steps > 0 ? config.max_walk_steps
                                             : spec.max_walk_steps),
        rng_(config.rng_seed) {}

  TierReport Run() {
    TierReport report;
    report.tier = Tier::kInformation;
    session_ = factory_();
    SessionInfo info;
    try {
      info = session_->Info();
    } catch (const CandidateError& e) {
      report.Note(std::string("info: ") + e.what());
    }
    if (!info.load_ok || !info.Has("resample_history")) {
      report.Note(info.load_ok ? "resample_history is absent"
                               : "candidate did not load");
      for (auto name : kInformationChecks) report.Add(std::string(name), false);
      session_->Close();
      return report;
    }

    int failures[4] = {0, 0, 0, 0};
    std::string first[4];
    for (int probe = 0; probe < config_.n_probes; ++probe) {
      if (!session_->alive()) session_ = factory_();
      const PlayerId player = probe % spec_.n_players;
      const ProbeOutcome outcome = Probe(player);
      const bool held[4] = {outcome.resample_legal, outcome.obs_reconstruction,
                            outcome.action_consistency,
                            outcome.resample_complete};
      for (int c = 0; c < 4; ++c) {
        if (!held[c] && failures[c]++ == 0) {
          first[c] = "probe " + std::to_string(probe) + " (player " +
                     std::to_string(player) + "): " + outcome.failure;
        }
      }
    }
    session_->Close();
    for (int c = 0; c < 4; ++c) {
      report.Add(std::string(kInformationChecks[c]), failures[c] == 0);
      if (failures[c] > 0) {
        report.Note(std::string(kInformationChecks[c]) + " failed on " +
                    std::to_string(failures[c]) + " of " +
                    std::to_string(config_.n_probes) + " probes; first at " +
                    first[c]);
      }
    }
    return report;
  }

 private:
  ProbeOutcome Probe(PlayerId player) {
    Session& session = *session_;
    WalkRecord walk;
    try {
      walk = StartWalk(session, spec_);
      for (int step = 0; step < max_steps_; ++step) {
        const WalkStep& current = walk.current();
        if (IsTerminalPlayer(current.acting_player)) break;
        const auto legal = LegalActionsOf(session, current.state);
        if (legal.empty()) break;
        AdvanceWalk(session, spec_, walk,
                    legal[UniformIndex(rng_, legal.size())]);
      }
    } catch (const CandidateError& e) {
      return AllFailed(std::string("walk ") +
                       std::string(ErrorKindName(e.kind())) + ": " + e.what());
    }
    const WalkRecord cut =
        walk.Truncated(UniformIndex(rng_, walk.steps.size()));
    std::vector<ActionId> trajectory;
    try {
      trajectory = ResampleFor(session, cut, player);
    } catch (const CandidateError& e) {
      return AllFailed(std::string("resample_history ") +
                       std::string(ErrorKindName(e.kind())) + ": " + e.what());
    }
    return CheckResampledTrajectory(session, spec_, cut, player, trajectory);
  }

  static ProbeOutcome AllFailed(std::string message) {
    ProbeOutcome out;
    out.resample_legal = out.obs_reconstruction = out.action_consistency =
        out.resample_complete = false;
    out.failure = std::move(message);
    return out;
  }

  const SessionFactory& factory_;
  const ProbeConfig& config_;
  const GameSpec& spec_;
  const int max_steps_;
  Rng rng_;
  std::unique_ptr<Session> session_;
};

}  // namespace

TierReport RunInformation(const SessionFactory& factory,
                          const ProbeConfig& config, const GameSpec& spec) {
  config.Validate();
  return InformationProber(factory, config, spec).Run();
}

// Stub detection over Python source.

namespace {

struct LogicalLine {
  int indent = 0;
  std::string text;
};

// Replaces string literals with the token $s and drops comments, then joins
// bracketed continuations into logical lines.
std::vector<LogicalLine> LogicalLines(std::string_view source) {
  std::vector<LogicalLine> lines;
  LogicalLine current;
  bool at_line_start = true;
  int depth = 0;
  std::size_t i = 0;
  auto flush = [&] {
    const auto first = current.text.find_first_not_of(' ');
    if (first != std::string::npos) {
      current.text = current.text.substr(first);
      while (!current.text.empty() && current.text.back() == ' ') {
        current.text.pop_back();
      }
      lines.push_back(current);
    }
    current = {};
    at_line_start = true;
    depth = 0;
  };
  while (i < source.size()) {
    const char ch = source[i];
    if (at_line_start) {
      int indent = 0;
      while (i < source.size() && (source[i] == ' ' || source[i] == '\t')) {
        indent += source[i] == '\t' ? 8 - indent % 8 : 1;
        ++i;
      }
      current.indent = indent;
      at_line_start = false;
      continue;
    }
    if (ch == '#') {
      while (i < source.size() && source[i] != '\n') ++i;
      continue;
    }
    if (ch == '"' || ch == '\'') {
      const bool triple = source.substr(i, 3) == std::string(3, ch);
      const std::string close = triple ? std::string(3, ch) : std::string(1, ch);
      i += close.size();
      while (i < source.size() && source.substr(i, close.size()) != close) {
        if (source[i] == '\\') ++i;
        if (!triple && source[i] == '\n') break;
        ++i;
      }
      i += close.size();
      current.text += "$s";
      continue;
    }
    if (ch == '\\' && i + 1 < source.size() && source[i + 1] == '\n') {
      i += 2;
      current.text += ' ';
      continue;
    }
    if (ch == '\n') {
      ++i;
      if (depth > 0) {
        current.text += ' ';
      } else {
        flush();
      }
      continue;
    }
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if ((ch == ')' || ch == ']' || ch == '}') && depth > 0) --depth;
    current.text += (ch == '\t' || ch == '\r') ? ' ' : ch;
    ++i;
  }
  flush();
  return lines;
}

std::string Squash(const std::string& text) {
  std::string out;
  for (char ch : text) {
    if (ch != ' ') out += ch;
  }
  return out;
}

// Splits on `sep` outside brackets.
std::vector<std::string> SplitTopLevel(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(part);
      part.clear();
    } else {
      part += ch;
    }
  }
  parts.push_back(part);
  return parts;
}

bool IsConstantListLiteral(const std::string& expr) {
  static const std::regex kToken(
      R"(\$s|-?\d+(\.\d*)?([eE][-+]?\d+)?|None|True|False|[\[\](),])");
  if (expr.size() < 2 || expr.front() != '[' || expr.back() != ']') {
    return false;
  }
  const std::string rest = std::regex_replace(expr, kToken, "");
  return rest.empty();
}

bool IsEchoComprehension(const std::string& expr, const std::string& param) {
  static const std::regex kEcho(
      R"(^\[([A-Za-z_]\w*)(\[-?\d+\])? for (.+) in ([A-Za-z_]\w*)\]$)");
  std::smatch m;
  if (!std::regex_match(expr, m, kEcho)) return false;
  if (m[4].str() != param) return false;
  const std::string target = m[3].str();
  if (target.find(" if ") != std::string::npos) return false;
  static const std::regex kName(R"([A-Za-z_]\w*)");
  for (auto it = std::sregex_iterator(target.begin(), target.end(), kName);
       it != std::sregex_iterator(); ++it) {
    if (it->str() == m[1].str()) return true;
  }
  return false;
}

}  // namespace

StubVerdict DetectStub(std::optional<std::string_view> source) {
  StubVerdict verdict;
  if (!source || source->empty()) {
    verdict.diagnostic = "resampler source unavailable";
    return verdict;
  }
  const std::vector<LogicalLine> lines = LogicalLines(*source);
  static const std::regex kDef(R"(^(async\s+)?def\s+\w+\s*\((.*)\)\s*(->.*)?:(.*)$)");
  std::size_t def_index = lines.size();
  std::smatch m;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (std::regex_match(lines[i].text, m, kDef)) {
      def_index = i;
      break;
    }
  }
  if (def_index == lines.size()) {
    verdict.diagnostic = "no function definition in resampler source";
    return verdict;
  }
  std::string param;
  {
    const std::string params = m[2].str();
    const std::string first = SplitTopLevel(params, ',').front();
    static const std::regex kParam(R"(^\s*\**([A-Za-z_]\w*))");
    std::smatch pm;
    if (std::regex_search(first, pm, kParam)) param = pm[1].str();
  }

  std::vector<std::string> statements;
  if (const std::string inline_body = m[4].str();
      inline_body.find_first_not_of(' ') != std::string::npos) {
    statements.push_back(inline_body);
  }
  const int def_indent = lines[def_index].indent;
  for (std::size_t i = def_index + 1; i < lines.size(); ++i) {
    if (lines[i].indent <= def_indent) break;
    statements.push_back(lines[i].text);
  }

  static const std::regex kReturn(R"((^|:\s*)return\b(.*)$)");
  for (const std::string& line : statements) {
    for (const std::string& statement : SplitTopLevel(line, ';')) {
      std::smatch rm;
      if (!std::regex_search(statement, rm, kReturn)) continue;
      std::string expr = rm[2].str();
      const auto first = expr.find_first_not_of(' ');
      expr = first == std::string::npos ? "" : expr.substr(first);
      while (!expr.empty() && expr.back() == ' ') expr.pop_back();
      verdict.returns.push_back(expr);
    }
  }
  if (verdict.returns.empty()) {
    verdict.diagnostic = "resampler has no return statement";
    return verdict;
  }
  verdict.stub = std::all_of(
      verdict.returns.begin(), verdict.returns.end(), [&](const std::string& e) {
        std::string spaced;
        for (char ch : e) {
          if (ch != ' ' || (!spaced.empty() && spaced.back() != ' ')) {
            spaced += ch;
          }
        }
        for (const char* pad : {"[ ", "( "}) {
          for (auto pos = spaced.find(pad); pos != std::string::npos;
               pos = spaced.find(pad)) {
            spaced.erase(pos + 1, 1);
          }
        }
        for (const char* pad : {" ]", " )"}) {
          for (auto pos = spaced.find(pad); pos != std::string::npos;
               pos = spaced.find(pad)) {
            spaced.erase(pos, 1);
          }
        }
        const std::string squashed = Squash(e);
        return squashed == "[]" || squashed == "list()" ||
               IsConstantListLiteral(squashed) ||
               IsEchoComprehension(spaced, param);
      });
  return verdict;
}

}  // namespace cwm
