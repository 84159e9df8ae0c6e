#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "dlpp/network.hpp"
#include "dlpp/proxy.hpp"

namespace dlpp {

struct ServiceConfig {
  std::string store_dir;        // instances/ and solutions/ live here
  std::size_t workers = 2;      // concurrent solves before answering 409
  double default_time_limit = 10.0;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Request handling for the planning API, independent of any socket layer.
/// Routes (all under /v1):
///   POST /instances                       upload, returns a content-derived id
///   GET  /instances/{id}
///   POST /instances/{id}/solve            {mode, time_limit_s, node_limit, seed}
///   GET  /solutions/{id}
///   POST /instances/{id}/whatif           {global_scale, per_commodity_overrides, mode}
///   GET  /compare?a=&b=
class PlanningService {
 public:
  explicit PlanningService(ServiceConfig config);

  /// Registers a proxy model; it serves every instance with a matching signature.
  void add_model(ProxyModel model);

  HttpResponse handle(const std::string& method, const std::string& target, const std::string& body);

  const ServiceConfig& config() const { return config_; }
  /// Solves currently holding a worker.
  std::size_t busy() const { return busy_.load(); }

 private:
  HttpResponse upload_instance(const std::string& body);
  HttpResponse get_instance(const std::string& id);
  HttpResponse solve(const std::string& id, const std::string& body);
  HttpResponse get_solution(const std::string& id);
  HttpResponse whatif(const std::string& id, const std::string& body);
  HttpResponse compare(const std::string& a, const std::string& b);

  std::string register_instance(const Instance& inst);
  std::optional<Instance> find_instance(const std::string& id);
  std::optional<std::string> find_solution(const std::string& id);
  /// Solves (or fetches) and returns the stored solution document.
  std::string solve_and_store(const std::string& instance_id, const Instance& inst, const std::string& mode,
                              double time_limit, std::size_t node_limit, std::uint64_t seed);

  ServiceConfig config_;
  std::mutex mutex_;
  std::map<std::string, Instance> instances_;
  std::map<std::string, std::string> solutions_;
  std::map<std::string, std::shared_ptr<const ProxyModel>> models_;  // by structure hash
  std::atomic<std::size_t> busy_{0};
};

/// cpp-httplib front end for a PlanningService.
class HttpServer {
 public:
  explicit HttpServer(PlanningService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dlpp
