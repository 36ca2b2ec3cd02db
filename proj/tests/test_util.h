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

#ifndef CWM_TESTS_TEST_UTIL_H_
#define CWM_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "cwm/registry.h"
#include "cwm/tier_scenarios.h"

namespace cwm::testing {

inline std::string BuiltinAdapterPath() { return CWM_BUILTIN_ADAPTER; }
inline std::string SourceDir() { return CWM_SOURCE_DIR; }
inline std::string ScenariosDir() { return SourceDir() + "/scenarios"; }

inline ScenarioFile ShippedScenarios(const std::string& game) {
  return LoadScenarioFile(ScenariosDir() + "/" + game + ".scenarios.json");
}

// A fresh directory under $TMPDIR, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "cwm-test-XXXXXX").string();
    path_ = ::mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }

  std::string Write(const std::string& name, const std::string& text,
                    bool executable = false) const {
    const std::string file = path_ + "/" + name;
    std::ofstream(file) << text;
    if (executable) {
      std::filesystem::permissions(file,
                                   std::filesystem::perms::owner_all,
                                   std::filesystem::perm_options::add);
    }
    return file;
  }

 private:
  std::string path_;
};

// Descriptor for cwm-builtin-adapter.
inline std::string BuiltinDescriptor(const std::string& builtin,
                                     const std::string& game) {
  return "{\"builtin\": \"" + builtin + "\", \"game\": \"" + game + "\"}\n";
}

}  // namespace cwm::testing

#endif  // CWM_TESTS_TEST_UTIL_H_
