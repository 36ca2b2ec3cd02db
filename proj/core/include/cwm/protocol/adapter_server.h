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

#ifndef CWM_PROTOCOL_ADAPTER_SERVER_H_
#define CWM_PROTOCOL_ADAPTER_SERVER_H_

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "cwm/program.h"
#include "cwm/value.h"

namespace cwm {

// Produces the program for a load request; throws std::exception whose
// message becomes the load error.
using ProgramLoader = std::function<std::shared_ptr<GameProgram>(
    const std::string& path, const std::string& preamble)>;

// Adapter side of the wire protocol over an InProcessSession. Used by the
// builtin adapter binary and by protocol tests.
class AdapterServer {
 public:
  explicit AdapterServer(ProgramLoader loader);

  // Handles one request frame and returns the response frame. Returns an
  // empty string after shutdown.
  std::string Handle(const std::string& frame);
  // Serves frames until EOF or shutdown.
  void Serve(std::istream& in, std::ostream& out);

  bool shut_down() const { return shut_down_; }

 private:
  Value Dispatch(const std::string& method, const Value& params);

  ProgramLoader loader_;
  std::unique_ptr<Session> session_;
  bool shut_down_ = false;
};

// Loader for candidate descriptor files of the form
//   {"builtin": "mutant_mutating", "game": "tic_tac_toe"}
// where "game" defaults to "builtin" when that names a registered game.
std::shared_ptr<GameProgram> LoadBuiltinDescriptor(const std::string& path,
                                                   const std::string& preamble);

}  // namespace cwm

#endif  // CWM_PROTOCOL_ADAPTER_SERVER_H_
