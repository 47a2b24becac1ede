// Copyright 2026 The phrictl Authors
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

// Temporary output directories and whole-tree snapshots for pipeline tests.

#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"

namespace scratch {

class Dir {
 public:
  explicit Dir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() /
              ("phrictl_" + name + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~Dir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  Dir(const Dir&) = delete;
  Dir& operator=(const Dir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Relative path -> file bytes for every regular file under `root`.
inline std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[std::filesystem::relative(entry.path(), root).string()] = slurp(entry.path());
    }
  }
  return files;
}

inline void write(const std::filesystem::path& file, const nlohmann::json& doc) {
  std::ofstream(file) << doc.dump(2);
}

/// 5 x 5 grid over the default ranges; runs in well under a second.
inline nlohmann::json smoke_config() {
  return {
      {"scenario", "S1"},
      {"alphas", {1.0, 0.7, 0.4}},
      {"grid", {{"m_F_range", {0.2, 100.0}},
                {"m_F_step", 25.0},
                {"b_F_range", {0.001, 400.0}},
                {"b_F_step", 100.0}}},
  };
}

}  // namespace scratch
