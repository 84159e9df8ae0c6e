#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include "dlpp/instance_io.hpp"
#include "dlpp/proxy.hpp"
#include "dlpp/service.hpp"
#include "dlpp/synthetic.hpp"
#include "httplib.h"
#include "json.hpp"

using namespace dlpp;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dlpp_service_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    ServiceConfig cfg;
    cfg.store_dir = dir_.string();
    svc_ = std::make_unique<PlanningService>(cfg);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Json call(const std::string& method, const std::string& target, const std::string& body, int expect) {
    const HttpResponse r = svc_->handle(method, target, body);
    EXPECT_EQ(r.status, expect) << method << ' ' << target << ": " << r.body;
    return Json::parse(r.body);
  }

  std::string upload(const Instance& inst) {
    return call("POST", "/v1/instances", save_instance(inst), 201).at("id").get<std::string>();
  }

  fs::path dir_;
  std::unique_ptr<PlanningService> svc_;
};

}  // namespace

TEST_F(ServiceTest, UploadAndSolveT1) {
  const std::string id = upload(fixture_t1());
  EXPECT_EQ(id.size(), 16u);
  EXPECT_EQ(upload(fixture_t1()), id);  // content addressed

  const Json solved = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "mip", "time_limit_s": 30})", 200);
  EXPECT_NEAR(solved.at("cost").get<double>(), 150.0, 1e-9);
  EXPECT_EQ(solved.at("metrics").at("trailers").get<int>(), 3);

  const std::string sid = solved.at("solution_id");
  const Json sol = call("GET", "/v1/solutions/" + sid, "", 200);
  EXPECT_EQ(sol.at("instance_id"), id);
  EXPECT_NEAR(sol.at("metrics").at("reference_cost").get<double>(), 200.0, 1e-9);

  // Same body, same id.
  const Json again = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "mip", "time_limit_s": 30})", 200);
  EXPECT_EQ(again.at("solution_id"), sid);

  const Json inst = call("GET", "/v1/instances/" + id, "", 200);
  EXPECT_EQ(load_instance_string(inst.dump()), fixture_t1());
}

TEST_F(ServiceTest, GdoAndGreedyModes) {
  const std::string id = upload(fixture_t1());
  const Json g = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "gdo"})", 200);
  EXPECT_NEAR(g.at("cost").get<double>(), 150.0, 1e-9);
  EXPECT_EQ(g.at("metrics").at("hamming").get<double>(), 1.0);
  const Json h = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "greedy"})", 200);
  EXPECT_GE(h.at("cost").get<double>(), 150.0 - 1e-9);
}

TEST_F(ServiceTest, WhatIfIdentityMatchesBaseProxySolve) {
  const Instance t1 = fixture_t1();
  svc_->add_model(init_model(t1, {}, 4));
  const std::string id = upload(t1);
  const Json base = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "proxy"})", 200);
  const Json w = call("POST", "/v1/instances/" + id + "/whatif", R"({"global_scale": 1.0})", 200);
  EXPECT_EQ(w.at("instance_id"), id);
  EXPECT_EQ(w.at("solution_id"), base.at("solution_id"));
  const Json sol = call("GET", "/v1/solutions/" + base.at("solution_id").get<std::string>(), "", 200);
  EXPECT_EQ(w.at("solution").at("plan"), sol.at("plan"));
  EXPECT_TRUE(w.at("solution").contains("restoration"));

  const std::string cmp = "/v1/compare?a=" + base.at("solution_id").get<std::string>() +
                          "&b=" + w.at("solution_id").get<std::string>();
  const Json c = call("GET", cmp, "", 200);
  EXPECT_EQ(c.at("distance").get<double>(), 0.0);
  EXPECT_EQ(c.at("cost_delta").get<double>(), 0.0);
  EXPECT_EQ(c.at("tv_step").get<double>(), 0.0);
}

TEST_F(ServiceTest, WhatIfOverridesAndScale) {
  const Instance t1 = fixture_t1();
  svc_->add_model(init_model(t1, {}, 4));
  const std::string id = upload(t1);
  const Json w = call("POST", "/v1/instances/" + id + "/whatif",
                      R"({"global_scale": 1.1, "per_commodity_overrides": {"k1": 0}})", 200);
  EXPECT_NE(w.at("instance_id"), id);
  EXPECT_NEAR(w.at("total_volume").get<double>(), 1.1 * 70.0, 1e-9);
  const Json err = call("POST", "/v1/instances/" + id + "/whatif", R"({"per_commodity_overrides": {"nope": 3}})", 400);
  EXPECT_EQ(err.at("error").at("path"), "$.per_commodity_overrides.nope");
  call("POST", "/v1/instances/" + id + "/whatif", R"({"global_scale": -1})", 400);
}

TEST_F(ServiceTest, CompareSameSolution) {
  const std::string id = upload(fixture_t1());
  const std::string sid = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "mip"})", 200).at("solution_id");
  const Json c = call("GET", "/v1/compare?a=" + sid + "&b=" + sid, "", 200);
  EXPECT_EQ(c.at("distance").get<double>(), 0.0);
  EXPECT_EQ(c.at("cost_delta").get<double>(), 0.0);
  for (const auto& d : c.at("deltas")) EXPECT_EQ(d.at("delta").get<int>(), 0);
}

TEST_F(ServiceTest, Errors) {
  call("GET", "/v1/instances/0123456789abcdef", "", 404);
  call("GET", "/v1/solutions/zzz", "", 404);
  call("GET", "/v2/instances", "", 404);
  call("GET", "/v1/compare?a=0123456789abcdef", "", 400);
  call("DELETE", "/v1/instances", "", 405);
  const Json bad = call("POST", "/v1/instances", "{not json", 400);
  EXPECT_EQ(bad.at("error").at("path"), "$");
  const Json schema = call("POST", "/v1/instances", R"({"sort_pairs": []})", 400);
  EXPECT_TRUE(schema.at("error").contains("path"));

  const std::string id = upload(fixture_t1());
  const Json mode = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "magic"})", 400);
  EXPECT_EQ(mode.at("error").at("path"), "$.mode");
  call("POST", "/v1/instances/" + id + "/solve", R"({"time_limit_s": "soon"})", 400);
  call("POST", "/v1/instances/" + id + "/solve", R"({"time_limit_s": 0})", 400);
  // No model for this structure.
  call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "proxy"})", 422);
}

TEST_F(ServiceTest, BusyWorkersGive409) {
  ServiceConfig cfg;
  cfg.store_dir = dir_.string();
  cfg.workers = 1;
  svc_ = std::make_unique<PlanningService>(cfg);
  const std::string big = upload(synthetic_terminal(5));
  const std::string small = upload(fixture_t1());
  std::thread slow([&] { svc_->handle("POST", "/v1/instances/" + big + "/solve", R"({"mode": "gdo", "time_limit_s": 20})"); });
  while (svc_->busy() == 0) std::this_thread::yield();
  call("POST", "/v1/instances/" + small + "/solve", R"({"mode": "mip"})", 409);
  slow.join();
  EXPECT_EQ(svc_->busy(), 0u);
  call("POST", "/v1/instances/" + small + "/solve", R"({"mode": "mip"})", 200);
}

TEST_F(ServiceTest, StorePersistsAcrossRestarts) {
  const std::string id = upload(fixture_t1());
  const std::string sid = call("POST", "/v1/instances/" + id + "/solve", R"({"mode": "mip"})", 200).at("solution_id");
  EXPECT_TRUE(fs::exists(dir_ / "instances" / (id + ".json")));
  ServiceConfig cfg;
  cfg.store_dir = dir_.string();
  svc_ = std::make_unique<PlanningService>(cfg);
  call("GET", "/v1/instances/" + id, "", 200);
  EXPECT_NEAR(call("GET", "/v1/solutions/" + sid, "", 200).at("metrics").at("cost").get<double>(), 150.0, 1e-9);
}

TEST_F(ServiceTest, HttpRoundTrip) {
  HttpServer server(*svc_);
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread loop([&] { server.run(); });
  struct Join {
    HttpServer& s;
    std::thread& t;
    ~Join() {
      s.stop();
      t.join();
    }
  } join{server, loop};
  httplib::Client client("127.0.0.1", port);
  auto up = client.Post("/v1/instances", save_instance(fixture_t1()), "application/json");
  ASSERT_TRUE(up);
  EXPECT_EQ(up->status, 201);
  const std::string id = Json::parse(up->body).at("id");
  auto solved = client.Post("/v1/instances/" + id + "/solve", R"({"mode": "mip"})", "application/json");
  ASSERT_TRUE(solved);
  EXPECT_EQ(solved->status, 200);
  EXPECT_NEAR(Json::parse(solved->body).at("cost").get<double>(), 150.0, 1e-9);
  const std::string sid = Json::parse(solved->body).at("solution_id");
  auto cmp = client.Get("/v1/compare?a=" + sid + "&b=" + sid);
  ASSERT_TRUE(cmp);
  EXPECT_EQ(cmp->status, 200);
  auto missing = client.Get("/v1/instances/ffffffffffffffff");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
}
