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

#include "cwm/protocol/child_process.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <thread>

#include "cwm/errors.h"

namespace cwm {
namespace {

std::atomic<int> live_children{0};
std::atomic<int> max_live_children{0};

void NoteSpawn() {
  const int now = ++live_children;
  int seen = max_live_children.load();
  while (now > seen && !max_live_children.compare_exchange_weak(seen, now)) {
  }
}

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

void CloseFd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

std::unique_ptr<ChildProcess> ChildProcess::Spawn(
    const std::vector<std::string>& argv) {
  if (argv.empty() || argv.front().empty()) {
    throw SpawnError("empty adapter command");
  }
  IgnoreSigpipe();
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  int to_child[2];
  int from_child[2];
  int status_pipe[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw SpawnError(std::string("pipe: ") + std::strerror(errno));
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw SpawnError(std::string("pipe: ") + std::strerror(errno));
  }
  if (::pipe2(status_pipe, O_CLOEXEC) != 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      ::close(fd);
    }
    throw SpawnError(std::string("pipe: ") + std::strerror(errno));
  }

  const pid_t pid = ::fork();
  if (pid < 0) {
    const int err = errno;
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1],
                   status_pipe[0], status_pipe[1]}) {
      ::close(fd);
    }
    throw SpawnError(std::string("fork: ") + std::strerror(err));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::signal(SIGPIPE, SIG_DFL);
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execvp(args[0], args.data());
    const int err = errno;
    (void)!::write(status_pipe[1], &err, sizeof(err));
    ::_exit(127);
  }

  ::close(to_child[0]);
  ::close(from_child[1]);
  ::close(status_pipe[1]);
  int exec_errno = 0;
  ssize_t n;
  do {
    n = ::read(status_pipe[0], &exec_errno, sizeof(exec_errno));
  } while (n < 0 && errno == EINTR);
  ::close(status_pipe[0]);
  if (n > 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    while (::waitpid(pid, nullptr, 0) < 0 && errno == EINTR) {
    }
    throw SpawnError("cannot execute '" + argv.front() +
                     "': " + std::strerror(exec_errno));
  }
  NoteSpawn();
  return std::unique_ptr<ChildProcess>(
      new ChildProcess(pid, to_child[1], from_child[0]));
}

ChildProcess::ChildProcess(pid_t pid, int in_fd, int out_fd)
    : pid_(pid), in_fd_(in_fd), out_fd_(out_fd) {}

ChildProcess::~ChildProcess() { Kill(); }

bool ChildProcess::WriteLine(const std::string& line) {
  if (in_fd_ < 0) return false;
  const std::string frame = line + "\n";
  std::size_t done = 0;
  while (done < frame.size()) {
    const ssize_t n = ::write(in_fd_, frame.data() + done, frame.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    done += static_cast<std::size_t>(n);
  }
  return true;
}

ChildProcess::ReadStatus ChildProcess::ReadLine(std::string& line,
                                                const Deadline& deadline) {
  constexpr std::chrono::milliseconds kForever(24 * 3600 * 1000);
  char chunk[65536];
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      if (nl > kMaxFrameBytes) return ReadStatus::kOversize;
      line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return ReadStatus::kLine;
    }
    if (buffer_.size() > kMaxFrameBytes) return ReadStatus::kOversize;
    if (out_fd_ < 0) return ReadStatus::kEof;
    const auto left = deadline.RemainingOr(kForever);
    if (left.count() <= 0) return ReadStatus::kTimeout;
    pollfd p{out_fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      return ReadStatus::kEof;
    }
    if (ready == 0) return ReadStatus::kTimeout;
    const ssize_t n = ::read(out_fd_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return ReadStatus::kEof;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void ChildProcess::Kill() {
  if (!running_) return;
  running_ = false;
  CloseFd(in_fd_);
  CloseFd(out_fd_);
  int status = 0;
  if (::waitpid(pid_, &status, WNOHANG) == pid_) {
    --live_children;
    return;
  }
  ::kill(-pid_, SIGTERM);
  ::kill(pid_, SIGTERM);
  const auto grace_end =
      std::chrono::steady_clock::now() + std::chrono::seconds(1);
  while (std::chrono::steady_clock::now() < grace_end) {
    if (::waitpid(pid_, &status, WNOHANG) == pid_) {
      --live_children;
      return;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ::kill(-pid_, SIGKILL);
  ::kill(pid_, SIGKILL);
  while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
  }
  --live_children;
}

int ChildProcess::LiveCount() { return live_children.load(); }
int ChildProcess::MaxLiveCount() { return max_live_children.load(); }
void ChildProcess::ResetMaxLiveCount() {
  max_live_children.store(live_children.load());
}

}  // namespace cwm
