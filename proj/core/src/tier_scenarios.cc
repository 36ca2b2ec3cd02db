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

#include "cwm/tier_scenarios.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "cwm/errors.h"
#include "cwm/registry.h"

namespace cwm {
namespace {

void LineColumn(std::string_view text, std::size_t offset, int& line,
                int& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

[[noreturn]] void Fail(const std::string& message) {
  throw ScenarioParseError(message);
}

void RejectUnknownKeys(const Value& object, std::initializer_list<const char*> known,
                       const std::string& where) {
  for (const auto& [key, unused] : object.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return key == k; })) {
      Fail(where + ": unknown key '" + key + "'");
    }
  }
}

const Value& Require(const Value& object, const char* key,
                     const std::string& where) {
  if (!object.contains(key)) Fail(where + ": missing '" + key + "'");
  return object[key];
}

int IntegerOf(const Value& value, const std::string& where) {
  if (!value.is_number_integer()) Fail(where + " must be an integer");
  return value.get<int>();
}

ScenarioChecks ParseChecks(const Value& value, const std::string& where,
                           int n_players) {
  if (!value.is_object()) Fail(where + ": checks must be an object");
  RejectUnknownKeys(value,
                    {"terminal", "current_player", "rewards_sign", "winner",
                     "illegal_next"},
                    where + ".checks");
  ScenarioChecks checks;
  if (value.contains("terminal")) {
    if (!value["terminal"].is_boolean()) {
      Fail(where + ".checks.terminal must be a boolean");
    }
    checks.terminal = value["terminal"].get<bool>();
  }
  if (value.contains("current_player")) {
    checks.current_player =
        IntegerOf(value["current_player"], where + ".checks.current_player");
  }
  if (value.contains("rewards_sign")) {
    const Value& signs = value["rewards_sign"];
    if (!signs.is_array()) Fail(where + ".checks.rewards_sign must be a list");
    std::vector<int> out;
    for (const Value& s : signs) {
      const int sign = IntegerOf(s, where + ".checks.rewards_sign entries");
      if (sign < -1 || sign > 1) {
        Fail(where + ".checks.rewards_sign entries must be -1, 0 or 1, got " +
             std::to_string(sign));
      }
      out.push_back(sign);
    }
    if (static_cast<int>(out.size()) != n_players) {
      Fail(where + ".checks.rewards_sign has " + std::to_string(out.size()) +
           " entries, game has " + std::to_string(n_players) + " players");
    }
    checks.rewards_sign = std::move(out);
  }
  if (value.contains("winner")) {
    const int winner = IntegerOf(value["winner"], where + ".checks.winner");
    if (winner < 0 || winner >= n_players) {
      Fail(where + ".checks.winner out of range");
    }
    checks.winner = winner;
  }
  if (value.contains("illegal_next")) {
    if (!value["illegal_next"].is_string() ||
        value["illegal_next"].get<std::string>().empty()) {
      Fail(where + ".checks.illegal_next must be a non-empty string");
    }
    checks.illegal_next = value["illegal_next"].get<std::string>();
  }
  if (checks.empty()) Fail(where + ": at least one check is required");
  return checks;
}

int Sign(double x) { return (x > 0) - (x < 0); }

std::string JoinActions(const std::vector<ActionId>& actions) {
  std::string out;
  for (const auto& a : actions) {
    if (!out.empty()) out += ", ";
    out += a;
  }
  return out;
}

// Empty on success, else the first reason the scenario failed.
std::string Replay(Session& session, const Scenario& scenario,
                   const GameSpec& spec) {
  StateHandle state = session.InitialState().state;
  for (std::size_t i = 0; i < scenario.actions.size(); ++i) {
    const ActionId& action = scenario.actions[i];
    const auto legal = LegalActionsOf(session, state);
    if (std::find(legal.begin(), legal.end(), action) == legal.end()) {
      return "action " + std::to_string(i) + " '" + action +
             "' not in legal actions [" + JoinActions(legal) + "]";
    }
    state = session.ApplyAction(state, action).new_state;
  }

  const ScenarioChecks& c = scenario.checks;
  const PlayerId player = CurrentPlayerOf(session, state);
  if (c.terminal && IsTerminalPlayer(player) != *c.terminal) {
    return std::string("expected ") + (*c.terminal ? "terminal" : "non-terminal") +
           ", current_player is " + std::to_string(player);
  }
  if (c.current_player && player != *c.current_player) {
    return "expected current_player " + std::to_string(*c.current_player) +
           ", got " + std::to_string(player);
  }
  if (c.rewards_sign || c.winner) {
    const auto rewards = RewardsOf(session, state, spec.n_players);
    if (c.rewards_sign) {
      for (int p = 0; p < spec.n_players; ++p) {
        if (Sign(rewards[p]) != (*c.rewards_sign)[p]) {
          return "reward sign of player " + std::to_string(p) + " is " +
                 std::to_string(Sign(rewards[p])) + ", expected " +
                 std::to_string((*c.rewards_sign)[p]);
        }
      }
    }
    if (c.winner) {
      for (int p = 0; p < spec.n_players; ++p) {
        if (p != *c.winner && !(rewards[*c.winner] > rewards[p])) {
          return "player " + std::to_string(*c.winner) +
                 " is not the strict reward maximum";
        }
      }
    }
  }
  if (c.illegal_next) {
    const auto legal = LegalActionsOf(session, state);
    if (std::find(legal.begin(), legal.end(), *c.illegal_next) != legal.end()) {
      return "'" + *c.illegal_next + "' is legal at the end state";
    }
  }
  return {};
}

}  // namespace

bool ScenarioChecks::empty() const {
  return !terminal && !current_player && !rewards_sign && !winner &&
         !illegal_next;
}

ScenarioParseError::ScenarioParseError(const std::string& message, int line,
                                       int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) +
                                        ", column " + std::to_string(column) +
                                        ": " + message
                                  : message),
      line_(line),
      column_(column) {}

Value ScenarioFile::ToValue() const {
  Value list = Value::array();
  for (const auto& s : scenarios) {
    Value checks = Value::object();
    if (s.checks.terminal) checks["terminal"] = *s.checks.terminal;
    if (s.checks.current_player) {
      checks["current_player"] = *s.checks.current_player;
    }
    if (s.checks.rewards_sign) checks["rewards_sign"] = *s.checks.rewards_sign;
    if (s.checks.winner) checks["winner"] = *s.checks.winner;
    if (s.checks.illegal_next) checks["illegal_next"] = *s.checks.illegal_next;
    list.push_back(
        {{"name", s.name}, {"actions", s.actions}, {"checks", checks}});
  }
  return {{"format_version", format_version},
          {"game", game},
          {"scenarios", std::move(list)}};
}

ScenarioFile ParseScenarios(std::string_view text) {
  Value doc;
  try {
    doc = Value::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    int line = 0;
    int column = 0;
    LineColumn(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) {
      what = what.substr(pos);
    }
    throw ScenarioParseError(what, line, column);
  }
  if (!doc.is_object()) Fail("document must be an object");
  RejectUnknownKeys(doc, {"format_version", "game", "scenarios"}, "document");

  ScenarioFile file;
  file.format_version = IntegerOf(Require(doc, "format_version", "document"),
                                  "format_version");
  if (file.format_version != kScenarioFormatVersion) {
    Fail("unsupported format_version " + std::to_string(file.format_version));
  }
  const Value& game = Require(doc, "game", "document");
  if (!game.is_string()) Fail("game must be a string");
  file.game = game.get<std::string>();
  int n_players = 0;
  try {
    n_players = MakeGame(file.game).spec.n_players;
  } catch (const std::invalid_argument& e) {
    Fail(e.what());
  }

  const Value& list = Require(doc, "scenarios", "document");
  if (!list.is_array()) Fail("scenarios must be a list");
  std::set<std::string> names;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Value& entry = list[i];
    std::string where = "scenarios[" + std::to_string(i) + "]";
    if (!entry.is_object()) Fail(where + " must be an object");
    RejectUnknownKeys(entry, {"name", "actions", "checks"}, where);
    Scenario scenario;
    const Value& name = Require(entry, "name", where);
    if (!name.is_string() || name.get<std::string>().empty()) {
      Fail(where + ".name must be a non-empty string");
    }
    scenario.name = name.get<std::string>();
    where += " ('" + scenario.name + "')";
    if (!names.insert(scenario.name).second) {
      Fail(where + ": duplicate scenario name");
    }
    const Value& actions = Require(entry, "actions", where);
    if (!IsStringList(actions)) Fail(where + ".actions must be a string list");
    scenario.actions = actions.get<std::vector<ActionId>>();
    if (std::any_of(scenario.actions.begin(), scenario.actions.end(),
                    [](const ActionId& a) { return a.empty(); })) {
      Fail(where + ".actions must not contain empty strings");
    }
    scenario.checks = ParseChecks(Require(entry, "checks", where), where,
                                  n_players);
    file.scenarios.push_back(std::move(scenario));
  }
  return file;
}

ScenarioFile LoadScenarioFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw HarnessError("cannot read scenario file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return ParseScenarios(text.str());
  } catch (const ScenarioParseError& e) {
    throw ScenarioParseError(path + ": " + e.what());
  }
}

TierReport RunScenarios(const SessionFactory& factory, const ScenarioFile& file,
                        const GameSpec& spec) {
  TierReport report;
  report.tier = Tier::kScenarios;
  if (file.scenarios.empty()) {
    report.Note("no scenarios supplied");
    return report;
  }
  std::unique_ptr<Session> session;
  for (const Scenario& scenario : file.scenarios) {
    if (!session || !session->alive()) session = factory();
    std::string failure;
    try {
      failure = Replay(*session, scenario, spec);
    } catch (const CandidateError& e) {
      failure = std::string(ErrorKindName(e.kind())) + ": " + e.what();
    }
    if (!failure.empty()) report.Note(scenario.name + ": " + failure);
    report.Add(scenario.name, failure.empty());
  }
  session->Close();
  return report;
}

}  // namespace cwm
