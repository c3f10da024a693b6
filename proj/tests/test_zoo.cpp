#include <catch2/catch_amalgamated.hpp>

#include "grs/zoo.hpp"

using namespace grs;

TEST_CASE("zoo constructs and self-validates") {
  auto entries = zoo();
  REQUIRE(entries.size() == 7);
  for (const char* name : {"gaussian", "sphere4", "cylinder_s3xr", "s2xr2", "s2xs2",
                           "cp2_fubini_study", "random_polynomial"}) {
    bool found = false;
    for (auto& e : entries) found = found || e.name == name;
    REQUIRE(found);
  }
  REQUIRE_THROWS_AS(zoo_by_name("unknown-manifold"), std::invalid_argument);
}

TEST_CASE("soliton entries pass soliton residuals at sampled points") {
  for (auto& e : zoo()) {
    if (e.type == SolitonType::None) continue;
    for (const Vec4& x : sample_points(e.chart.domain, 4, 1234)) {
      auto r = soliton_residuals(e.chart, x);
      REQUIRE(r.max() < 1e-7);
    }
  }
}

TEST_CASE("closed entries reproduce 8 pi^2 chi and 12 pi^2 tau") {
  for (auto& e : zoo()) {
    if (!e.expect.closed) continue;
    Vec4 x = sample_points(e.chart.domain, 1, 55)[0];
    ChartPoint cp = chart_point_at(e.chart, x, ChartWant::Curvature);
    double gb = gauss_bonnet_integrand(cp.pg.R);
    double sig = signature_integrand(cp.pg.R);
    if (e.expect.volume > 0) {
      REQUIRE(gb * e.expect.volume ==
              Catch::Approx(8 * M_PI * M_PI * e.expect.chi).epsilon(1e-3));
      REQUIRE(std::abs(sig * e.expect.volume - 12 * M_PI * M_PI * e.expect.tau) <
              1e-3 * std::max(1.0, gb * e.expect.volume));
    }
    if (e.name == "cp2_fubini_study") {
      REQUIRE(gb / sig == Catch::Approx(2.0).epsilon(1e-3));
    }
    if (e.name == "s2xs2") {
      REQUIRE(std::abs(sig) < 1e-10);
    }
  }
}

TEST_CASE("homogeneous entries have constant integrands") {
  for (const char* name : {"sphere4", "s2xs2", "cp2_fubini_study"}) {
    ChartGeometry c = zoo_by_name(name).chart;
    double first = 0;
    bool have = false;
    for (const Vec4& x : sample_points(c.domain, 6, 99)) {
      double gb = gauss_bonnet_integrand(chart_point_at(c, x, ChartWant::Curvature).pg.R);
      if (!have) {
        first = gb;
        have = true;
      } else {
        REQUIRE(gb == Catch::Approx(first).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("random_polynomial is a generic FD chart") {
  ChartGeometry c = zoo_by_name("random_polynomial").chart;
  REQUIRE(c.policy.kind == DerivPolicy::Kind::FiniteDifference);
  ChartPoint cp = chart_point_at(c, {0.05, -0.02, 0.08, 0.01}, ChartWant::FirstJets);
  // generically curved and with a nonzero C-block
  REQUIRE(cp.pg.R.norm2() > 1e-6);
  REQUIRE(mat3_norm2(hodge_block(cp.pg.R, +1, -1)) > 1e-8);
  // curvature symmetries hold to FD tolerance
  auto d = validate_curvature(cp.pg.R);
  REQUIRE(d.symmetry_residual < 1e-8);
  REQUIRE(std::abs(d.bianchi_residual) < 1e-8);
}

TEST_CASE("conformal pair entry machinery") {
  // (g, u^2 g) for appendix checks: built from any base entry
  ChartGeometry base = zoo_by_name("random_polynomial").chart;
  // u positive quadratic
  auto u = [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T s = 1.0 + 0.2 * x[0] - 0.15 * x[1] + 0.3 * x[2] * x[3];
    return s;
  };
  // smoke: evaluates and matches u^2 g pointwise
  Mat4 g0, g1;
  double f0, f1;
  base.val_eval({0.1, 0.0, -0.1, 0.05}, g0, f0);
  std::array<double, 4> xx = {0.1, 0.0, -0.1, 0.05};
  double uv = u(xx);
  ChartGeometry conf = base;
  conf.val_eval = [&base, u](const Vec4& x, Mat4& g, double& f) {
    base.val_eval(x, g, f);
    std::array<double, 4> p = x;
    double w = u(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] *= w * w;
  };
  conf.val_eval({0.1, 0.0, -0.1, 0.05}, g1, f1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) REQUIRE(g1[i][j] == Catch::Approx(uv * uv * g0[i][j]));
}
