#include "quperman/app/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include <mutex>
#include <shared_mutex>

#include "quperman/analysis.hpp"
#include "quperman/app/commands.hpp"
#include "quperman/benchmark.hpp"
#include "quperman/config.hpp"
#include "quperman/error.hpp"
#include "quperman/health.hpp"

namespace quperman::app {

namespace {

using Json = nlohmann::ordered_json;
constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, std::string_view message) {
  Json j;
  j["schema"] = "error.v1";
  j["status"] = status;
  j["error"] = message;
  res.status = status;
  res.set_content(j.dump(2) + "\n", kJson);
}

// Maps the error hierarchy onto HTTP status codes.
template <class F>
void handle(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const EmptyDistributionError& e) {
    send_error(res, 404, e.what());
  } catch (const InputError& e) {
    send_error(res, 400, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;
  std::shared_mutex storeMutex;
  BenchmarkStore store;
  ToolConfig config;

  explicit Impl(ServiceOptions o) : options(std::move(o)) {
    store = load_store(options.storePath);
    if (options.configPath) config = load_config(*options.configPath);
    routes();
  }

  void routes() {
    server.Get("/api/v1/project/health", [this](const httplib::Request&, httplib::Response& res) {
      handle(res, [&] {
        if (!options.corpusRoot) {
          send_error(res, 404, "service was started without a corpus root");
          return;
        }
        const auto analysis = analyze_project(*options.corpusRoot, config.analysis);
        if (analysis.files.empty()) throw InputError("no source files found under the corpus root");
        const auto report =
            assess_health(analysis.files, config.thresholds, config.weighting, nullptr, config_digest(config));
        res.set_content(to_health_document(report), kJson);
      });
    });

    server.Get("/api/v1/benchmark/distribution", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] {
        TagFilter filter;
        for (const auto& [k, v] : req.params) filter[k] = v;
        validate_tags(filter);
        std::shared_lock lock(storeMutex);
        res.set_content(to_distribution_document(distribution(store, filter)), kJson);
      });
    });

    server.Post("/api/v1/benchmark/entries", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] {
        Json body;
        try {
          body = Json::parse(req.body);
        } catch (const nlohmann::json::exception& e) {
          throw InputError(std::string("malformed JSON: ") + e.what());
        }
        if (!body.is_object()) throw InputError("entry must be an object");
        const auto id = body.find("projectId");
        const auto score = body.find("score");
        if (id == body.end() || !id->is_string()) throw InputError("entry needs a string 'projectId'");
        if (score == body.end() || !score->is_number()) throw InputError("entry needs a numeric 'score'");
        Tags tags;
        if (const auto t = body.find("tags"); t != body.end()) {
          if (!t->is_object()) throw InputError("'tags' must be an object");
          for (const auto& [k, v] : t->items()) {
            if (!v.is_string()) throw InputError("tag values must be strings");
            tags[k] = v.get<std::string>();
          }
        }
        std::optional<std::string> recordedAt;
        if (const auto r = body.find("recordedAt"); r != body.end()) {
          if (!r->is_string()) throw InputError("'recordedAt' must be a string");
          recordedAt = r->get<std::string>();
        }

        std::unique_lock lock(storeMutex);
        BenchmarkStore next = store;  // commit only after the file write succeeds
        const auto entry = ingest_entry(next, score->get<double>(), id->get<std::string>(), tags, recordedAt);
        save_store(next, options.storePath);
        store = std::move(next);
        res.status = 201;
        res.set_content(to_entry_document(entry), kJson);
      });
    });

    server.Post("/api/v1/model/evaluate", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] {
        std::shared_lock lock(storeMutex);
        res.set_content(evaluate_scenario(req.body, &store).roadmap, kJson);
      });
    });

    server.Get("/api/v1/model/defaults", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(cmd_defaults().stdoutText, kJson);
    });

    if (options.staticDir && !server.set_mount_point("/", options.staticDir->string())) {
      throw InputError("static directory '" + options.staticDir->string() + "' does not exist");
    }
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Service::~Service() = default;

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int Service::bind_ephemeral(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }
void Service::stop() { impl_->server.stop(); }
void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::pair<std::string, int> parse_bind_address(const std::string& bind) {
  std::string host = "127.0.0.1";
  std::string port = bind;
  if (const auto colon = bind.rfind(':'); colon != std::string::npos) {
    host = bind.substr(0, colon);
    port = bind.substr(colon + 1);
  }
  if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  int p = 0;
  try {
    std::size_t used = 0;
    p = std::stoi(port, &used);
    if (used != port.size()) p = -1;
  } catch (const std::exception&) {
    p = -1;
  }
  if (host.empty() || p < 0 || p > 65535) throw InputError("bind address must look like host:port, got '" + bind + "'");
  return {host, p};
}

}  // namespace quperman::app
