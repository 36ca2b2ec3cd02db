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

#include "cwm/isolation.h"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "cwm/errors.h"

namespace cwm {
namespace {

void WriteAll(int fd, const std::string& data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return;
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace

std::optional<Value> RunForked(const std::function<Value()>& task,
                               std::chrono::milliseconds budget) {
  int fds[2];
  if (::pipe(fds) != 0) {
    throw HarnessError(std::string("pipe: ") + std::strerror(errno));
  }
  std::fflush(nullptr);
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw HarnessError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::close(fds[0]);
    Value envelope;
    try {
      envelope = {{"ok", true}, {"result", task()}};
    } catch (const std::exception& e) {
      envelope = {{"ok", false}, {"error", e.what()}};
    } catch (...) {
      envelope = {{"ok", false}, {"error", "unknown exception"}};
    }
    WriteAll(fds[1], envelope.dump());
    ::close(fds[1]);
    ::_exit(0);
  }

  ::close(fds[1]);
  const auto deadline = std::chrono::steady_clock::now() + budget;
  std::string output;
  bool timed_out = false;
  char buffer[65536];
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) {
      timed_out = true;
      break;
    }
    const ssize_t n = ::read(fds[0], buffer, sizeof(buffer));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buffer, static_cast<std::size_t>(n));
  }
  ::close(fds[0]);
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) return std::nullopt;

  Value envelope;
  try {
    envelope = Value::parse(output);
  } catch (const nlohmann::json::exception&) {
    throw HarnessError("isolated task died without a result (status " +
                       std::to_string(status) + ")");
  }
  if (!envelope.value("ok", false)) {
    throw HarnessError(envelope.value("error", std::string("isolated task failed")));
  }
  return envelope.at("result");
}

}  // namespace cwm
