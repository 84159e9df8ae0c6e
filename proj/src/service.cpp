#include "dlpp/service.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "dlpp/errors.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/greedy.hpp"
#include "dlpp/hash.hpp"
#include "dlpp/instance_io.hpp"
#include "dlpp/metrics.hpp"
#include "dlpp/restoration.hpp"
#include "httplib.h"
#include "json.hpp"

namespace dlpp {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

/// Maps to a 4xx response carrying a field path.
struct HttpError : std::runtime_error {
  HttpError(int status, std::string message, std::string path = {})
      : std::runtime_error(std::move(message)), status(status), path(std::move(path)) {}
  int status;
  std::string path;
};

HttpResponse json_response(int status, const Json& doc) { return {status, doc.dump(2) + "\n"}; }

HttpResponse error_response(int status, const std::string& message, const std::string& path = {}) {
  Json err{{"code", status}, {"message", message}};
  if (!path.empty()) err["path"] = path;
  return json_response(status, Json{{"error", err}});
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::map<std::string, std::string> parse_query(const std::string& query) {
  std::map<std::string, std::string> out;
  std::istringstream in(query);
  std::string pair;
  while (std::getline(in, pair, '&')) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      out[pair] = "";
    } else {
      out[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
  }
  return out;
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    Json doc = Json::parse(body);
    if (!doc.is_object()) throw HttpError(400, "request body must be a JSON object", "$");
    return doc;
  } catch (const Json::parse_error& e) {
    throw HttpError(400, std::string("malformed JSON: ") + e.what(), "$");
  }
}

template <class T>
T field(const Json& doc, const char* name, T fallback) {
  if (!doc.contains(name) || doc[name].is_null()) return fallback;
  try {
    return doc[name].get<T>();
  } catch (const Json::exception&) {
    throw HttpError(400, std::string("field has the wrong type"), std::string("$.") + name);
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
  }
  fs::rename(tmp, path);
}

bool valid_id(const std::string& id) {
  if (id.size() != 16) return false;
  for (char c : id) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

/// Slot counts keyed by "sort_pair/trailer_type" from a stored solution.
std::map<std::string, int> counts_of(const Json& solution) {
  std::map<std::string, int> out;
  for (const auto& e : solution.at("plan").at("y")) {
    out[e.at("sort_pair").get<std::string>() + "/" + e.at("trailer_type").get<std::string>()] = e.at("count").get<int>();
  }
  return out;
}

}  // namespace

PlanningService::PlanningService(ServiceConfig config) : config_(std::move(config)) {
  if (config_.workers == 0) config_.workers = 1;
}

void PlanningService::add_model(ProxyModel model) {
  std::lock_guard lock(mutex_);
  const std::string key = model.signature.structure;
  models_[key] = std::make_shared<const ProxyModel>(std::move(model));
}

HttpResponse PlanningService::handle(const std::string& method, const std::string& target, const std::string& body) {
  try {
    const auto q = target.find('?');
    const std::string path = target.substr(0, q);
    const auto query = parse_query(q == std::string::npos ? "" : target.substr(q + 1));
    const auto parts = split_path(path);
    if (parts.empty() || parts[0] != "v1") throw HttpError(404, "unknown route " + path);

    if (parts.size() == 2 && parts[1] == "instances") {
      if (method == "POST") return upload_instance(body);
    } else if (parts.size() == 3 && parts[1] == "instances") {
      if (method == "GET") return get_instance(parts[2]);
    } else if (parts.size() == 4 && parts[1] == "instances" && parts[3] == "solve") {
      if (method == "POST") return solve(parts[2], body);
    } else if (parts.size() == 4 && parts[1] == "instances" && parts[3] == "whatif") {
      if (method == "POST") return whatif(parts[2], body);
    } else if (parts.size() == 3 && parts[1] == "solutions") {
      if (method == "GET") return get_solution(parts[2]);
    } else if (parts.size() == 2 && parts[1] == "compare") {
      if (method == "GET") {
        if (!query.count("a") || !query.count("b")) throw HttpError(400, "compare needs a and b", "query");
        return compare(query.at("a"), query.at("b"));
      }
    } else {
      throw HttpError(404, "unknown route " + path);
    }
    throw HttpError(405, method + " not allowed on " + path);
  } catch (const HttpError& e) {
    return error_response(e.status, e.what(), e.path);
  } catch (const ValidationError& e) {
    return error_response(400, e.what(), e.path());
  } catch (const ParseError& e) {
    return error_response(400, e.what(), "$");
  } catch (const Error& e) {
    return error_response(422, e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

std::string PlanningService::register_instance(const Instance& inst) {
  const std::string text = save_instance(inst);
  const std::string id = hex64(fnv1a(text));
  std::lock_guard lock(mutex_);
  if (!instances_.count(id)) {
    instances_.emplace(id, inst);
    if (!config_.store_dir.empty()) write_file(fs::path(config_.store_dir) / "instances" / (id + ".json"), text);
  }
  return id;
}

std::optional<Instance> PlanningService::find_instance(const std::string& id) {
  if (!valid_id(id)) return std::nullopt;
  std::lock_guard lock(mutex_);
  if (auto it = instances_.find(id); it != instances_.end()) return it->second;
  if (config_.store_dir.empty()) return std::nullopt;
  const fs::path file = fs::path(config_.store_dir) / "instances" / (id + ".json");
  if (!fs::exists(file)) return std::nullopt;
  Instance inst = load_instance_string(read_file(file));
  instances_.emplace(id, inst);
  return inst;
}

std::optional<std::string> PlanningService::find_solution(const std::string& id) {
  if (!valid_id(id)) return std::nullopt;
  std::lock_guard lock(mutex_);
  if (auto it = solutions_.find(id); it != solutions_.end()) return it->second;
  if (config_.store_dir.empty()) return std::nullopt;
  const fs::path file = fs::path(config_.store_dir) / "solutions" / (id + ".json");
  if (!fs::exists(file)) return std::nullopt;
  std::string doc = read_file(file);
  solutions_.emplace(id, doc);
  return doc;
}

HttpResponse PlanningService::upload_instance(const std::string& body) {
  const Instance inst = load_instance_string(body);
  const std::string id = register_instance(inst);
  return json_response(201, Json{{"id", id},
                                 {"sort_pairs", inst.sort_pairs.size()},
                                 {"trailer_types", inst.trailer_types.size()},
                                 {"commodities", inst.commodities.size()},
                                 {"total_volume", inst.total_volume()},
                                 {"has_reference_plan", inst.reference_plan.has_value()}});
}

HttpResponse PlanningService::get_instance(const std::string& id) {
  auto inst = find_instance(id);
  if (!inst) throw HttpError(404, "unknown instance " + id);
  return {200, save_instance(*inst)};
}

std::string PlanningService::solve_and_store(const std::string& instance_id, const Instance& inst,
                                             const std::string& mode, double time_limit, std::size_t node_limit,
                                             std::uint64_t seed) {
  std::ostringstream key;
  key << instance_id << '|' << mode << '|' << seed << '|' << time_limit << '|' << node_limit;
  const std::string id = hex64(fnv1a(key.str()));
  if (auto existing = find_solution(id)) return *existing;

  std::shared_ptr<const ProxyModel> model;
  if (mode == "proxy") {
    std::lock_guard lock(mutex_);
    auto it = models_.find(signature_of(inst).structure);
    if (it == models_.end()) throw HttpError(422, "no proxy model is loaded for this instance structure");
    model = it->second;
  } else if (mode != "mip" && mode != "gdo" && mode != "greedy") {
    throw HttpError(400, "mode must be one of mip, gdo, greedy, proxy", "$.mode");
  }

  if (busy_.fetch_add(1) >= config_.workers) {
    --busy_;
    throw HttpError(409, "all solver workers are busy");
  }
  struct Release {
    std::atomic<std::size_t>& n;
    ~Release() { --n; }
  } release{busy_};

  MipOptions mip;
  mip.time_limit = time_limit;
  mip.node_limit = node_limit;
  const auto start = std::chrono::steady_clock::now();
  Json doc;
  doc["id"] = id;
  doc["instance_id"] = instance_id;
  doc["mode"] = mode;
  doc["seed"] = seed;
  doc["time_limit_s"] = time_limit;
  doc["node_limit"] = node_limit;
  LoadPlan plan;
  std::string status = "Feasible";
  std::optional<Json> restoration;
  std::optional<double> share;
  if (mode == "mip") {
    PlanSolve r = solve_model1(inst, mip);
    if (!r.plan) throw HttpError(422, std::string("no feasible plan found: ") + to_string(r.mip.status));
    plan = std::move(*r.plan);
    status = to_string(r.mip.status);
  } else if (mode == "gdo") {
    GdoOptions g;
    g.stage1 = mip;
    g.stage2 = mip;
    GdoResult r = solve_gdo(inst, g);
    plan = std::move(r.plan);
    status = to_string(r.stage2.status);
    doc["z_star"] = r.z_star;
  } else if (mode == "greedy") {
    plan = greedy_solve(inst).plan;
  } else {
    ProxySolve r = proxy_solve(*model, inst, mip);
    plan = std::move(r.plan);
    restoration = Json::parse(restoration_report_json(inst, r.report));
    share = predicted_capacity_share(inst, r.prediction.y_hat, plan.y);
  }
  require_feasible(inst, plan);
  doc["status"] = status;
  doc["plan"] = Json::parse(plan_to_json(inst, plan));
  Json metrics{{"cost", plan.objective}};
  int trailers = 0;
  for (int y : plan.y) trailers += y;
  metrics["trailers"] = trailers;
  if (inst.reference_plan) {
    metrics["hamming"] = hamming_distance(inst, plan.y);
    metrics["distance"] = normalized_distance(inst, plan.y);
    metrics["reference_cost"] = plan_cost(inst, reference_counts(inst));
  }
  if (share) metrics["predicted_capacity_share"] = *share;
  doc["metrics"] = std::move(metrics);
  if (restoration) doc["restoration"] = std::move(*restoration);
  doc["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string text = doc.dump(2) + "\n";
  std::lock_guard lock(mutex_);
  auto [it, inserted] = solutions_.emplace(id, text);
  if (inserted && !config_.store_dir.empty()) {
    write_file(fs::path(config_.store_dir) / "solutions" / (id + ".json"), text);
  }
  return it->second;
}

HttpResponse PlanningService::solve(const std::string& id, const std::string& body) {
  auto inst = find_instance(id);
  if (!inst) throw HttpError(404, "unknown instance " + id);
  const Json req = parse_body(body);
  const std::string mode = field<std::string>(req, "mode", "mip");
  const double limit = field<double>(req, "time_limit_s", config_.default_time_limit);
  if (!(limit > 0.0) || !std::isfinite(limit)) throw HttpError(400, "time limit must be positive", "$.time_limit_s");
  const auto nodes = field<std::size_t>(req, "node_limit", 0);
  const auto seed = field<std::uint64_t>(req, "seed", 0);
  const Json doc = Json::parse(solve_and_store(id, *inst, mode, limit, nodes, seed));
  return json_response(200, Json{{"solution_id", doc.at("id")}, {"cost", doc.at("metrics").at("cost")},
                                 {"metrics", doc.at("metrics")}, {"status", doc.at("status")}});
}

HttpResponse PlanningService::get_solution(const std::string& id) {
  auto doc = find_solution(id);
  if (!doc) throw HttpError(404, "unknown solution " + id);
  return {200, *doc};
}

HttpResponse PlanningService::whatif(const std::string& id, const std::string& body) {
  auto base = find_instance(id);
  if (!base) throw HttpError(404, "unknown instance " + id);
  const Json req = parse_body(body);
  const double scale = field<double>(req, "global_scale", 1.0);
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw HttpError(400, "global_scale must be nonnegative", "$.global_scale");
  std::vector<double> vol = base->volumes();
  for (double& v : vol) v *= scale;
  if (req.contains("per_commodity_overrides") && !req["per_commodity_overrides"].is_null()) {
    const Json& ov = req["per_commodity_overrides"];
    if (!ov.is_object()) throw HttpError(400, "overrides must map commodity ids to volumes", "$.per_commodity_overrides");
    for (const auto& [cid, value] : ov.items()) {
      const std::string path = "$.per_commodity_overrides." + cid;
      auto k = base->find_commodity(cid);
      if (!k) throw HttpError(400, "unknown commodity " + cid, path);
      if (!value.is_number() || !(value.get<double>() >= 0.0)) throw HttpError(400, "volume must be a nonnegative number", path);
      vol[*k] = value.get<double>();
    }
  }
  const std::string mode = field<std::string>(req, "mode", "proxy");
  const double limit = field<double>(req, "time_limit_s", config_.default_time_limit);
  if (!(limit > 0.0) || !std::isfinite(limit)) throw HttpError(400, "time limit must be positive", "$.time_limit_s");
  const auto seed = field<std::uint64_t>(req, "seed", 0);

  const Instance derived = base->with_volumes(vol);
  const std::string derived_id = register_instance(derived);
  const Json solution = Json::parse(solve_and_store(derived_id, derived, mode, limit, 0, seed));
  return json_response(200, Json{{"base_instance_id", id},
                                 {"instance_id", derived_id},
                                 {"total_volume", derived.total_volume()},
                                 {"solution_id", solution.at("id")},
                                 {"solution", solution}});
}

HttpResponse PlanningService::compare(const std::string& a, const std::string& b) {
  auto da = find_solution(a);
  if (!da) throw HttpError(404, "unknown solution " + a);
  auto db = find_solution(b);
  if (!db) throw HttpError(404, "unknown solution " + b);
  const Json ja = Json::parse(*da);
  const Json jb = Json::parse(*db);
  const auto ca = counts_of(ja);
  const auto cb = counts_of(jb);
  if (ca.size() != cb.size()) throw HttpError(422, "solutions belong to differently shaped instances");
  std::vector<double> ya, yb;
  Json deltas = Json::array();
  double sq = 0.0;
  for (const auto& [key, count] : ca) {
    auto it = cb.find(key);
    if (it == cb.end()) throw HttpError(422, "solutions belong to differently shaped instances");
    ya.push_back(count);
    yb.push_back(it->second);
    sq += double(it->second - count) * double(it->second - count);
    const auto slash = key.find('/');
    deltas.push_back(Json{{"sort_pair", key.substr(0, slash)},
                          {"trailer_type", key.substr(slash + 1)},
                          {"a", count},
                          {"b", it->second},
                          {"delta", it->second - count}});
  }
  const double cost_a = ja.at("metrics").at("cost").get<double>();
  const double cost_b = jb.at("metrics").at("cost").get<double>();
  return json_response(200, Json{{"a", a},
                                 {"b", b},
                                 {"distance", ya.empty() ? 0.0 : normalized_distance(yb, ya)},
                                 {"tv_step", std::sqrt(sq)},
                                 {"cost_delta", cost_b - cost_a},
                                 {"deltas", deltas}});
}

struct HttpServer::Impl {
  explicit Impl(PlanningService& s) : service(s) {}
  PlanningService& service;
  httplib::Server server;
};

HttpServer::HttpServer(PlanningService& service) : impl_(std::make_unique<Impl>(service)) {
  // Catch-all handlers rather than a pre-routing hook: the body is only read for routed requests.
  const auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (!req.params.empty()) {
      target += '?';
      bool first = true;
      for (const auto& [k, v] : req.params) {
        if (!first) target += '&';
        target += k + "=" + v;
        first = false;
      }
    }
    const HttpResponse r = impl_->service.handle(req.method, target, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  const std::string any = R"(/.*)";
  impl_->server.Get(any, forward);
  impl_->server.Post(any, forward);
  impl_->server.Put(any, forward);
  impl_->server.Delete(any, forward);
  impl_->server.Patch(any, forward);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace dlpp
