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

// phrictl: batch front-end for admittance-controller design maps.
//
//   phrictl sweep  --config cfg.json [--out dir] [--alphas 1,0.7,0.4]
//   phrictl front  --config cfg.json ...
//   phrictl select --config cfg.json ...
//   phrictl bundle --config cfg.json [--downsample k]
//   phrictl serve  --config cfg.json [--port 8080] [--assets dir]
//
// Exit status: 0 success, 1 configuration error, 2 computation error.

#include <csignal>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "phri/config.hpp"
#include "phri/errors.hpp"
#include "phri/pipeline.hpp"
#include "phri/serve.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitComputation = 2;

struct Options {
  std::string config;
  std::string out;
  std::string alphas;
  std::size_t downsample = 0;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string assets;
  std::string bundle;
};

phri::BundleServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) {
    g_server->stop();
  }
}

phri::ToolkitConfig resolve(const Options& opt) {
  phri::ToolkitConfig config = phri::load_config(opt.config);
  if (!opt.alphas.empty()) {
    // Round-trip through the parser so the override gets the same checks.
    nlohmann::json echo = phri::config_echo(config);
    echo["alphas"] = phri::parse_alpha_list(opt.alphas);
    const auto out_dir = config.output_dir;
    config = phri::parse_config(echo);
    config.output_dir = out_dir;
  }
  if (opt.downsample > 0) {
    config.downsample = opt.downsample;
  }
  return config;
}

int serve(const Options& opt, const phri::RunContext& ctx) {
  const auto bundle = opt.bundle.empty() ? phri::bundle_path(ctx.out)
                                         : std::filesystem::path(opt.bundle);
  std::optional<std::filesystem::path> assets;
  if (!opt.assets.empty()) {
    assets = opt.assets;
  }
  phri::BundleServer server(bundle, assets);
  const int port = server.bind(opt.host, opt.port);
  g_server = &server;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cout << "serving " << bundle.string() << " on http://" << opt.host << ":" << port
            << "/" << std::endl;
  server.run();
  g_server = nullptr;
  return 0;
}

int run(const std::string& command, const Options& opt) {
  const phri::ToolkitConfig config = resolve(opt);
  const std::filesystem::path out =
      opt.out.empty() ? config.output_dir : std::filesystem::path(opt.out);
  phri::RunContext ctx{config, out, phri::default_worker_count()};
  if (command == "serve") {
    return serve(opt, ctx);
  }
  phri::Warnings warnings;
  if (command == "sweep") {
    warnings = phri::run_sweep(ctx);
  } else if (command == "front") {
    warnings = phri::run_front(ctx);
  } else if (command == "select") {
    warnings = phri::run_select(ctx);
  } else {
    warnings = phri::run_bundle(ctx);
  }
  for (const auto& w : warnings) {
    std::cerr << "phrictl: warning: " << w << "\n";
  }
  std::cout << command << ": wrote artifacts to " << ctx.out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design maps, Pareto fronts and controller selection for admittance control"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration file")->required();
    sub->add_option("--out", opt.out, "Output directory (overrides output_dir)");
    sub->add_option("--alphas", opt.alphas, "Comma-separated integration orders");
    sub->add_option("--downsample", opt.downsample, "Bundle map stride")
        ->check(CLI::PositiveNumber);
  };
  for (const char* name : {"sweep", "front", "select", "bundle"}) {
    add_common(app.add_subcommand(name));
  }
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve the explorer bundle over HTTP");
  add_common(serve_cmd);
  serve_cmd->add_option("--port", opt.port, "TCP port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", opt.host, "Listen address");
  serve_cmd->add_option("--assets", opt.assets, "Explorer asset directory served at /");
  serve_cmd->add_option("--bundle", opt.bundle, "Bundle file (default: <out>/explorer_bundle.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const phri::ConfigError& e) {
    std::cerr << "phrictl: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "phrictl: " << command << " failed: " << e.what() << "\n";
    return kExitComputation;
  }
}
