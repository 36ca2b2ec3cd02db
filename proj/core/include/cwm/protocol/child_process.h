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

#ifndef CWM_PROTOCOL_CHILD_PROCESS_H_
#define CWM_PROTOCOL_CHILD_PROCESS_H_

#include <sys/types.h>

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "cwm/deadline.h"

namespace cwm {

// Frames larger than this are a protocol violation.
inline constexpr std::size_t kMaxFrameBytes = 8u << 20;

// A supervised child with line-oriented pipes on stdin/stdout; stderr is
// inherited. The child leads its own process group so Kill also reaches
// anything it spawned.
class ChildProcess {
 public:
  enum class ReadStatus { kLine, kTimeout, kEof, kOversize };

  // Throws SpawnError when the program cannot be executed.
  static std::unique_ptr<ChildProcess> Spawn(
      const std::vector<std::string>& argv);

  ~ChildProcess();
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  // False when the child's stdin is closed.
  bool WriteLine(const std::string& line);
  // Reads one line (without the newline) before `deadline`.
  ReadStatus ReadLine(std::string& line, const Deadline& deadline);

  // SIGTERM, up to one second of grace, then SIGKILL; reaps the child.
  // Idempotent.
  void Kill();
  bool running() const { return running_; }
  pid_t pid() const { return pid_; }

  // Children spawned and not yet reaped, across the process.
  static int LiveCount();
  static int MaxLiveCount();
  static void ResetMaxLiveCount();

 private:
  ChildProcess(pid_t pid, int in_fd, int out_fd);

  pid_t pid_;
  int in_fd_;
  int out_fd_;
  bool running_ = true;
  std::string buffer_;
};

}  // namespace cwm

#endif  // CWM_PROTOCOL_CHILD_PROCESS_H_
