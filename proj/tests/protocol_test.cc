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

#include <gtest/gtest.h>

#include <chrono>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "cwm/candidate.h"
#include "cwm/errors.h"
#include "cwm/isolation.h"
#include "cwm/preamble.h"
#include "cwm/protocol/adapter_server.h"
#include "cwm/protocol/child_process.h"
#include "cwm/protocol/wire_session.h"
#include "cwm/registry.h"
#include "cwm/tier_dynamics.h"
#include "cwm/tier_information.h"
#include "cwm/tier_static.h"
#include "cwm/walk.h"
#include "test_util.h"

namespace cwm {
namespace {

using std::chrono::milliseconds;
using Clock = std::chrono::steady_clock;

std::vector<std::string> AdapterArgv() {
  return {testing::BuiltinAdapterPath(), "--stdio"};
}

std::unique_ptr<WireSession> OpenBuiltin(const testing::TempDir& dir,
                                         const std::string& builtin,
                                         const std::string& game,
                                         WireOptions options = {}) {
  const std::string path =
      dir.Write(builtin + ".json", testing::BuiltinDescriptor(builtin, game));
  return WireSession::Open(AdapterArgv(), path, std::string(kPreambleV1),
                           options);
}

TEST(WireSessionTest, LoadsBuiltinCandidate) {
  testing::TempDir dir;
  auto session = OpenBuiltin(dir, "kuhn_poker", "kuhn_poker");
  const SessionInfo info = session->Info();
  EXPECT_TRUE(info.load_ok);
  for (std::string_view f : kApiFunctions) EXPECT_TRUE(info.Has(f)) << f;
  ASSERT_TRUE(info.resample_source.has_value());
  EXPECT_FALSE(IsStubSource(*info.resample_source));
  const InitialResult init = session->InitialState();
  EXPECT_EQ(init.state_type, "map");
  EXPECT_EQ(CurrentPlayerOf(*session, init.state), kChancePlayer);
  const ApplyResult next = session->ApplyAction(init.state, "deal:K");
  EXPECT_FALSE(next.input_mutated);
  EXPECT_NE(next.new_state, init.state);
  EXPECT_EQ(PlayerNameOr(*session, 1), "Player 1");
  session->Close();
  EXPECT_FALSE(session->alive());
}

TEST(WireSessionTest, FingerprintsMatchInProcess) {
  testing::TempDir dir;
  auto wire = OpenBuiltin(dir, "leduc_poker", "leduc_poker");
  auto local = MakeGame("leduc_poker").NewSession();
  StateHandle w = wire->InitialState().state;
  StateHandle l = local->InitialState().state;
  for (const char* action : {"deal:K", "deal:Q", "Raise", "Call", "deal:J"}) {
    EXPECT_EQ(wire->StateFingerprint(w), local->StateFingerprint(l));
    EXPECT_EQ(wire->Observations(w), local->Observations(l));
    w = wire->ApplyAction(w, action).new_state;
    l = local->ApplyAction(l, action).new_state;
  }
  EXPECT_EQ(wire->StateFingerprint(w), local->StateFingerprint(l));
}

TEST(WireSessionTest, TiersMatchInProcess) {
  testing::TempDir dir;
  AdapterOptions adapter;
  adapter.command = AdapterArgv();
  for (const std::string name : {"mutant_mutating", "mutant_crash_key",
                                 "mutant_nondeterministic"}) {
    const ReferenceGame g = MakeGame("leduc_poker");
    const std::string path =
        dir.Write(name + ".json", testing::BuiltinDescriptor(name, g.spec.name));
    FuzzConfig config;
    config.n_trajectories = 20;
    const TierReport wire = RunDynamics(
        AdapterCandidate(path, adapter).Factory(Deadline::Never()), config,
        g.spec);
    const TierReport local = RunDynamics(
        BuiltinCandidate(name, g).Factory(Deadline::Never()), config, g.spec);
    EXPECT_EQ(wire.Vector(), local.Vector()) << name;
  }
}

TEST(WireSessionTest, CrashIsReportedAndSessionSurvives) {
  testing::TempDir dir;
  auto session = OpenBuiltin(dir, "kuhn_poker", "kuhn_poker");
  const StateHandle s = session->InitialState().state;
  try {
    session->ApplyAction(s, "Bet");
    FAIL() << "expected crash";
  } catch (const CandidateError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCrash);
  }
  EXPECT_TRUE(session->alive());
  EXPECT_EQ(CurrentPlayerOf(*session, s), kChancePlayer);
}

TEST(WireSessionTest, UnknownHandleIsProtocolError) {
  testing::TempDir dir;
  auto session = OpenBuiltin(dir, "tic_tac_toe", "tic_tac_toe");
  try {
    session->LegalActions(StateHandle{99});
    FAIL();
  } catch (const CandidateError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kProtocolError);
  }
  EXPECT_FALSE(session->alive());
}

TEST(WireSessionTest, MissingCandidateFileFailsLoad) {
  auto session = WireSession::Open(AdapterArgv(), "/nonexistent/cand.py",
                                   std::string(kPreambleV1));
  EXPECT_FALSE(session->Info().load_ok);
  ASSERT_TRUE(session->Info().load_error.has_value());
  EXPECT_NE(session->Info().load_error->find("FileNotFoundError"),
            std::string::npos);
}

TEST(WireSessionTest, MissingAdapterIsSpawnError) {
  EXPECT_THROW(WireSession::Open({"/nonexistent/adapter", "--stdio"}, "x.py",
                                 ""),
               SpawnError);
}

TEST(WireSessionTest, InputMutationCrossesTheWire) {
  testing::TempDir dir;
  auto session = OpenBuiltin(dir, "mutant_mutating", "tic_tac_toe");
  const StateHandle s = session->InitialState().state;
  EXPECT_TRUE(session->ApplyAction(s, "1,1").input_mutated);
}

TEST(WireSessionTest, ResampleOverWire) {
  testing::TempDir dir;
  auto session = OpenBuiltin(dir, "kuhn_poker", "kuhn_poker");
  const GameSpec spec = MakeGame("kuhn_poker").spec;
  WalkRecord walk = StartWalk(*session, spec);
  for (const char* a : {"deal:Q", "deal:K", "Bet"}) {
    AdvanceWalk(*session, spec, walk, a);
  }
  const auto trajectory = ResampleFor(*session, walk, 1);
  const ProbeOutcome outcome =
      CheckResampledTrajectory(*session, spec, walk, 1, trajectory);
  EXPECT_TRUE(outcome.all()) << outcome.failure;
}

TEST(WireSessionTest, DeadlineBoundsHangingCandidate) {
  testing::TempDir dir;
  WireOptions options;
  options.call_timeout = milliseconds(60000);
  options.deadline = Deadline::After(milliseconds(500));
  auto session = OpenBuiltin(dir, "mutant_hanging", "tic_tac_toe", options);
  const StateHandle s = session->InitialState().state;
  const auto start = Clock::now();
  EXPECT_THROW(session->ApplyAction(s, "0,0"), TimeoutError);
  EXPECT_LT(Clock::now() - start, std::chrono::seconds(3));
  EXPECT_FALSE(session->alive());
  try {
    session->LegalActions(s);
    FAIL();
  } catch (const CandidateError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSessionDead);
  }
}

// Fake adapters speaking a broken protocol.
constexpr char kLoadOk[] =
    "read line\n"
    "echo '{\"id\":1,\"ok\":true,\"result\":{\"load_ok\":true,"
    "\"protocol_version\":1}}'\n"
    "read line\n";

std::unique_ptr<WireSession> OpenScript(const testing::TempDir& dir,
                                        const std::string& body,
                                        milliseconds call_timeout =
                                            milliseconds(2000)) {
  const std::string script =
      dir.Write("adapter.sh", "#!/bin/sh\n" + body, true);
  WireOptions options;
  options.call_timeout = call_timeout;
  return WireSession::Open({"/bin/sh", script}, "cand.py", "", options);
}

ErrorKind KindOfInitialState(WireSession& session) {
  try {
    session.InitialState();
  } catch (const CandidateError& e) {
    return e.kind();
  }
  return ErrorKind::kShape;
}

TEST(ProtocolFaultTest, GarbageHandshakeFailsLoad) {
  testing::TempDir dir;
  auto session = OpenScript(dir, "read line\necho 'not json'\nsleep 30\n");
  EXPECT_FALSE(session->Info().load_ok);
  EXPECT_NE(session->Info().load_error->find("malformed"), std::string::npos);
  EXPECT_FALSE(session->alive());
}

TEST(ProtocolFaultTest, SilentHandshakeTimesOut) {
  testing::TempDir dir;
  const auto start = Clock::now();
  auto session = OpenScript(dir, "read line\nsleep 30\n", milliseconds(200));
  EXPECT_FALSE(session->Info().load_ok);
  EXPECT_LT(Clock::now() - start, std::chrono::seconds(3));
}

TEST(ProtocolFaultTest, VersionMismatchFailsLoad) {
  testing::TempDir dir;
  auto session = OpenScript(
      dir,
      "read line\necho '{\"id\":1,\"ok\":true,\"result\":{\"load_ok\":true,"
      "\"protocol_version\":9}}'\nsleep 30\n");
  EXPECT_FALSE(session->Info().load_ok);
}

TEST(ProtocolFaultTest, GarbageFrameIsProtocolError) {
  testing::TempDir dir;
  auto session = OpenScript(dir, std::string(kLoadOk) + "echo '{{{'\n");
  ASSERT_TRUE(session->Info().load_ok);
  EXPECT_EQ(KindOfInitialState(*session), ErrorKind::kProtocolError);
  EXPECT_FALSE(session->alive());
}

TEST(ProtocolFaultTest, WrongIdIsProtocolError) {
  testing::TempDir dir;
  auto session = OpenScript(
      dir, std::string(kLoadOk) +
               "echo '{\"id\":7,\"ok\":true,\"result\":{\"state\":0}}'\n");
  EXPECT_EQ(KindOfInitialState(*session), ErrorKind::kProtocolError);
}

TEST(ProtocolFaultTest, MissingKindIsProtocolError) {
  testing::TempDir dir;
  auto session = OpenScript(
      dir, std::string(kLoadOk) + "echo '{\"id\":2,\"ok\":false}'\n");
  EXPECT_EQ(KindOfInitialState(*session), ErrorKind::kProtocolError);
}

TEST(ProtocolFaultTest, OversizeFrameIsProtocolError) {
  testing::TempDir dir;
  auto session = OpenScript(
      dir, std::string(kLoadOk) +
               "head -c 9000000 /dev/zero | tr '\\0' 'a'\necho\nsleep 30\n");
  EXPECT_EQ(KindOfInitialState(*session), ErrorKind::kProtocolError);
}

TEST(ProtocolFaultTest, ExitIsSessionDead) {
  testing::TempDir dir;
  auto session = OpenScript(dir, std::string(kLoadOk) + "exit 0\n");
  EXPECT_EQ(KindOfInitialState(*session), ErrorKind::kSessionDead);
}

TEST(ProtocolFaultTest, CrashResponseKeepsSessionAlive) {
  testing::TempDir dir;
  auto session = OpenScript(
      dir, std::string(kLoadOk) +
               "echo '{\"id\":2,\"ok\":false,\"error\":{\"kind\":\"crash\","
               "\"message\":\"KeyError\"}}'\nsleep 30\n");
  EXPECT_EQ(KindOfInitialState(*session), ErrorKind::kCrash);
  EXPECT_TRUE(session->alive());
}

TEST(ProtocolFaultTest, SlowCallTimesOutAndKills) {
  testing::TempDir dir;
  auto session =
      OpenScript(dir, std::string(kLoadOk) + "sleep 30\n", milliseconds(200));
  const auto start = Clock::now();
  EXPECT_THROW(session->InitialState(), TimeoutError);
  EXPECT_LT(Clock::now() - start, std::chrono::seconds(3));
  EXPECT_FALSE(session->alive());
}

TEST(ChildProcessTest, KillIsIdempotentAndReaps) {
  const int before = ChildProcess::LiveCount();
  auto child = ChildProcess::Spawn({"/bin/sleep", "30"});
  EXPECT_EQ(ChildProcess::LiveCount(), before + 1);
  child->Kill();
  child->Kill();
  EXPECT_FALSE(child->running());
  EXPECT_EQ(ChildProcess::LiveCount(), before);
}

TEST(ChildProcessTest, TermResistantChildIsKilled) {
  testing::TempDir dir;
  const std::string script =
      dir.Write("stubborn.sh", "#!/bin/sh\ntrap '' TERM\nwhile :; do sleep 1; done\n",
                true);
  auto child = ChildProcess::Spawn({"/bin/sh", script});
  std::this_thread::sleep_for(milliseconds(100));
  const auto start = Clock::now();
  child->Kill();
  EXPECT_LT(Clock::now() - start, std::chrono::seconds(3));
  EXPECT_FALSE(child->running());
}

TEST(ChildProcessTest, ReadLineTimesOut) {
  auto child = ChildProcess::Spawn({"/bin/cat"});
  std::string line;
  EXPECT_EQ(child->ReadLine(line, Deadline::After(milliseconds(50))),
            ChildProcess::ReadStatus::kTimeout);
  ASSERT_TRUE(child->WriteLine("hello"));
  EXPECT_EQ(child->ReadLine(line, Deadline::After(milliseconds(2000))),
            ChildProcess::ReadStatus::kLine);
  EXPECT_EQ(line, "hello");
}

TEST(ChildProcessTest, MissingProgramIsSpawnError) {
  EXPECT_THROW(ChildProcess::Spawn({"/nonexistent/program"}), SpawnError);
  EXPECT_THROW(ChildProcess::Spawn({}), SpawnError);
}

Value Frame(const std::string& text) { return Value::parse(text); }

TEST(AdapterServerTest, RejectsCallsBeforeLoad) {
  AdapterServer server(LoadBuiltinDescriptor);
  const Value r = Frame(server.Handle(
      R"({"id": 1, "method": "initial_state", "params": {}})"));
  EXPECT_EQ(r["id"], 1);
  EXPECT_FALSE(r["ok"]);
  EXPECT_EQ(r["error"]["kind"], "protocol_error");
}

TEST(AdapterServerTest, MalformedFramesGetErrors) {
  AdapterServer server(LoadBuiltinDescriptor);
  const Value garbage = Frame(server.Handle("nope"));
  EXPECT_FALSE(garbage["ok"]);
  EXPECT_TRUE(garbage["id"].is_null());
  const Value unknown =
      Frame(server.Handle(R"({"id": 2, "method": "dance", "params": {}})"));
  EXPECT_EQ(unknown["error"]["kind"], "protocol_error");
}

TEST(AdapterServerTest, ServesSessionAndShutsDown) {
  testing::TempDir dir;
  const std::string path =
      dir.Write("t.json", testing::BuiltinDescriptor("tic_tac_toe", "tic_tac_toe"));
  std::istringstream in(
      Value({{"id", 1},
             {"method", "load"},
             {"params", {{"path", path}, {"preamble", ""},
                         {"protocol_version", 1}}}})
          .dump() +
      "\n"
      R"({"id": 2, "method": "initial_state", "params": {}})"
      "\n"
      R"({"id": 3, "method": "legal_actions", "params": {"state": 0}})"
      "\n"
      R"({"id": 4, "method": "load", "params": {"path": "x"}})"
      "\n"
      R"({"id": 5, "method": "shutdown", "params": {}})"
      "\n"
      R"({"id": 6, "method": "initial_state", "params": {}})"
      "\n");
  std::ostringstream out;
  AdapterServer server(LoadBuiltinDescriptor);
  server.Serve(in, out);
  EXPECT_TRUE(server.shut_down());
  std::vector<Value> responses;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) {
    responses.push_back(Frame(line));
  }
  ASSERT_EQ(responses.size(), 5u);
  EXPECT_TRUE(responses[0]["ok"]);
  EXPECT_EQ(responses[0]["result"]["protocol_version"], 1);
  EXPECT_EQ(responses[1]["result"]["state_type"], "map");
  EXPECT_EQ(responses[2]["result"].size(), 9u);
  EXPECT_FALSE(responses[3]["ok"]);
  EXPECT_EQ(responses[4]["id"], 5);
}

TEST(AdapterServerTest, DescriptorErrors) {
  testing::TempDir dir;
  EXPECT_THROW(LoadBuiltinDescriptor(dir.path() + "/missing.json", ""),
               std::runtime_error);
  const std::string python = dir.Write("cand.py", "def initial_state():\n");
  try {
    LoadBuiltinDescriptor(python, "");
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("SyntaxError"), std::string::npos);
  }
}

TEST(IsolationTest, ReturnsChildResult) {
  const auto result =
      RunForked([] { return Value{{"answer", 42}}; }, milliseconds(5000));
  ASSERT_TRUE(result.has_value());
  EXPECT_EQ((*result)["answer"], 42);
}

TEST(IsolationTest, ExpiredBudgetReturnsNothing) {
  const auto start = Clock::now();
  const auto result = RunForked(
      [] {
        for (;;) std::this_thread::sleep_for(milliseconds(10));
        return Value();
      },
      milliseconds(200));
  EXPECT_FALSE(result.has_value());
  EXPECT_LT(Clock::now() - start, std::chrono::seconds(3));
}

TEST(IsolationTest, ChildErrorsAreRethrown) {
  EXPECT_THROW(RunForked([]() -> Value { throw std::runtime_error("bad"); },
                         milliseconds(5000)),
               HarnessError);
  EXPECT_THROW(RunForked([]() -> Value { std::abort(); }, milliseconds(5000)),
               HarnessError);
}

}  // namespace
}  // namespace cwm
