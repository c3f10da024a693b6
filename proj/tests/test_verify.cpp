#include <catch2/catch_amalgamated.hpp>

#include "grs/verify.hpp"

using namespace grs;
using namespace grs::verify;

TEST_CASE("algebraic suite passes on synthetic jets") {
  SuiteConfig cfg;
  cfg.suite = "algebraic";
  cfg.points_per_manifold = 50;
  cfg.seed = 7;
  VerificationReport rep = run(cfg);
  REQUIRE(rep.records.size() > 500);
  for (auto& r : rep.records) {
    INFO(r.check_id << " residual " << r.residual);
    REQUIRE(r.pass);
  }
}

TEST_CASE("differential suite on two zoo charts") {
  SuiteConfig cfg;
  cfg.suite = "differential";
  cfg.manifolds = {"s2xr2", "cp2_fubini_study"};
  cfg.points_per_manifold = 3;
  VerificationReport rep = run(cfg);
  REQUIRE(rep.all_pass());
  bool saw_bochner = false;
  for (auto& r : rep.records) saw_bochner = saw_bochner || r.check_id == "diff.bochner";
  REQUIRE(saw_bochner);
}

TEST_CASE("unknown manifold is a config error") {
  SuiteConfig cfg;
  cfg.suite = "differential";
  cfg.manifolds = {"unknown-manifold"};
  REQUIRE_THROWS_AS(run(cfg), std::invalid_argument);
  cfg.suite = "nonsense";
  cfg.manifolds = {};
  REQUIRE_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("report round-trips through JSON") {
  SuiteConfig cfg;
  cfg.suite = "flow";
  cfg.manifolds = {"gaussian"};
  cfg.points_per_manifold = 2;
  VerificationReport rep = run(cfg);
  nlohmann::json j = to_json(rep, "test");
  VerificationReport back = report_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.records.size() == rep.records.size());
  for (size_t k = 0; k < rep.records.size(); ++k) {
    REQUIRE(back.records[k].check_id == rep.records[k].check_id);
    REQUIRE(back.records[k].residual == rep.records[k].residual);  // bitwise
    REQUIRE(back.records[k].pass == rep.records[k].pass);
    REQUIRE(back.records[k].manifold == rep.records[k].manifold);
  }
}

TEST_CASE("runs are deterministic for a fixed seed") {
  SuiteConfig cfg;
  cfg.suite = "algebraic";
  cfg.points_per_manifold = 20;
  cfg.seed = 99;
  VerificationReport a = run(cfg), b = run(cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t k = 0; k < a.records.size(); ++k)
    REQUIRE(a.records[k].residual == b.records[k].residual);  // bitwise identical
}

TEST_CASE("convergence study") {
  SuiteConfig cfg;
  cfg.fd_step = 4e-2;
  cfg.fd_order = 4;
  SECTION("delta W identity observes order ~4") {
    auto st = convergence_study(cfg, "diff.div.weyl");
    REQUIRE(st.rows.size() == 3);
    if (!st.noise_floor) REQUIRE(st.observed_order > 3.5);
  }
  SECTION("flow check observes order ~2 in the time step") {
    cfg.fd_step = 4e-2;
    auto st = convergence_study(cfg, "flow.evolwplus");
    if (!st.noise_floor) REQUIRE(st.observed_order > 1.5);
  }
  SECTION("algebraic check rejected") {
    REQUIRE_THROWS_AS(convergence_study(cfg, "alg.wcc"), std::invalid_argument);
  }
}

TEST_CASE("manifest charts") {
  std::string path = "/tmp/grs_test_manifest.json";
  {
    std::ofstream out(path);
    out << R"([{"name": "my_sphere", "family": "sphere4", "params": {"r": 2.0},
                "lambda": 0.75}])";
  }
  SuiteConfig cfg;
  cfg.suite = "differential";
  cfg.manifest_path = path;
  cfg.manifolds = {"my_sphere"};
  cfg.points_per_manifold = 2;
  VerificationReport rep = run(cfg);
  REQUIRE(rep.all_pass());
  REQUIRE(rep.records.size() > 0);
}
