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

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace phri {

/// The server could not start (port in use, bad bundle, bad asset dir).
class StartupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Read-only HTTP front for an explorer bundle:
///   GET /api/bundle  the bundle file, byte for byte
///   GET /api/health  {"status":"ok"}
///   GET /            explorer assets, or a short placeholder page
/// The bundle is validated and loaded once; requests never touch the disk
/// copy again.
class BundleServer {
 public:
  BundleServer(const std::filesystem::path& bundle,
               std::optional<std::filesystem::path> assets = std::nullopt);
  ~BundleServer();

  BundleServer(const BundleServer&) = delete;
  BundleServer& operator=(const BundleServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void run();
  void stop();
  void wait_until_ready() const;

  const std::string& payload() const { return payload_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string payload_;
};

}  // namespace phri
