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

#include "phri/serve.hpp"

#include "httplib.h"
#include "phri/errors.hpp"
#include "phri/io.hpp"

namespace phri {

namespace {

constexpr const char* kPlaceholderPage =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>phrictl</title></head>\n"
    "<body><p>No explorer assets installed. The bundle is at "
    "<a href=\"/api/bundle\">/api/bundle</a>.</p></body></html>\n";

}  // namespace

struct BundleServer::Impl {
  httplib::Server server;
};

BundleServer::BundleServer(const std::filesystem::path& bundle,
                           std::optional<std::filesystem::path> assets)
    : impl_(std::make_unique<Impl>()) {
  try {
    payload_ = read_text_file(bundle);
    bundle_from_json(nlohmann::json::parse(payload_));
  } catch (const nlohmann::json::parse_error& e) {
    throw StartupError("bundle " + bundle.string() + " is not valid JSON: " + e.what());
  } catch (const ArtifactError& e) {
    throw StartupError("refusing to serve " + bundle.string() + ": " + e.what());
  }

  auto& server = impl_->server;
  // httplib defaults to SO_REUSEPORT, which lets a second server share a
  // port that is already taken.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server.Get("/api/bundle", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(payload_, "application/json");
  });
  server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"status\":\"ok\"}", "application/json");
  });
  if (assets) {
    if (!server.set_mount_point("/", assets->string())) {
      throw StartupError("asset directory " + assets->string() + " is not readable");
    }
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html");
    });
  }
}

BundleServer::~BundleServer() { stop(); }

int BundleServer::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  if (port == 0) {
    const int bound = server.bind_to_any_port(host);
    if (bound < 0) {
      throw StartupError("cannot bind " + host);
    }
    return bound;
  }
  if (!server.bind_to_port(host, port)) {
    throw StartupError("cannot bind " + host + ":" + std::to_string(port) +
                       " (port busy or not permitted)");
  }
  return port;
}

void BundleServer::run() { impl_->server.listen_after_bind(); }

void BundleServer::stop() {
  if (impl_) {
    impl_->server.stop();
  }
}

void BundleServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace phri
