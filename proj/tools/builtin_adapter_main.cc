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

// Serves builtin candidate descriptors over the adapter wire protocol:
//   cwm-builtin-adapter --stdio
// A descriptor file holds {"builtin": NAME, "game": GAME}.

#include <iostream>
#include <string>

#include "cwm/protocol/adapter_server.h"

int main(int argc, char** argv) {
  if (argc != 2 || std::string(argv[1]) != "--stdio") {
    std::cerr << "usage: cwm-builtin-adapter --stdio\n";
    return 2;
  }
  std::ios::sync_with_stdio(false);
  cwm::AdapterServer server(cwm::LoadBuiltinDescriptor);
  server.Serve(std::cin, std::cout);
  return 0;
}
