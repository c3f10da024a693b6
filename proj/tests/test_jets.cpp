#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "grs/fd.hpp"
#include "grs/jet.hpp"
#include "grs/lambda2.hpp"

using namespace grs;

TEST_CASE("jet arithmetic reproduces known derivatives") {
  // f(x) = exp(x0) * sin(x1) + x2^2 x3 / (1 + x0 x3)
  auto f = [](const JetVec4& x) {
    return x[0].exp() * x[1].sin() + x[2] * x[2] * x[3] / (1.0 + x[0] * x[3]);
  };
  std::array<double, 4> x0 = {0.3, -0.7, 0.5, 0.2};
  Jet j = f(seed_jets(x0));
  const double e = std::exp(x0[0]), s = std::sin(x0[1]), c = std::cos(x0[1]);
  const double den = 1.0 + x0[0] * x0[3];
  REQUIRE(j.val() == Catch::Approx(e * s + x0[2] * x0[2] * x0[3] / den));
  REQUIRE(j.d(0) == Catch::Approx(e * s - x0[2] * x0[2] * x0[3] * x0[3] / (den * den)));
  REQUIRE(j.d(1) == Catch::Approx(e * c));
  REQUIRE(j.d(2) == Catch::Approx(2 * x0[2] * x0[3] / den));
  REQUIRE(j.d(1, 1) == Catch::Approx(-e * s));
  REQUIRE(j.d(0, 1) == Catch::Approx(e * c));
  REQUIRE(j.d(2, 2, 3) == Catch::Approx(2.0 / den - 2.0 * x0[3] * x0[0] / (den * den)));
  REQUIRE(j.d(1, 1, 1, 1) == Catch::Approx(e * s));
}

TEST_CASE("jet algebra identities") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    std::array<double, 4> x0 = {g(rng), g(rng), g(rng), g(rng)};
    JetVec4 x = seed_jets(x0);
    Jet a = 1.0 + x[0] * x[0] + (x[1] * x[2]).sin() * 0.3;
    Jet b = 2.0 + (x[3] * 0.5).cos();
    Jet prod = a * b;
    Jet back = prod / b;
    for (int k = 0; k < Jet::kCoeffs; ++k)
      REQUIRE(back.coeff(k) == Catch::Approx(a.coeff(k)).margin(1e-12));
    Jet sq = a.sqrt();
    Jet sq2 = sq * sq;
    for (int k = 0; k < Jet::kCoeffs; ++k)
      REQUIRE(sq2.coeff(k) == Catch::Approx(a.coeff(k)).margin(1e-12));
    Jet le = a.log().exp();
    for (int k = 0; k < Jet::kCoeffs; ++k)
      REQUIRE(le.coeff(k) == Catch::Approx(a.coeff(k)).margin(1e-11));
    // partial of product = product rule at jet level (valid below the
    // truncation degree)
    Jet pa = prod.partial(2);
    Jet pr = a.partial(2) * b + a * b.partial(2);
    const auto& mi = Jet::tables().mi;
    for (int k = 0; k < Jet::kCoeffs; ++k) {
      if (mi[k][0] + mi[k][1] + mi[k][2] + mi[k][3] >= Jet::kDeg) continue;
      REQUIRE(pa.coeff(k) == Catch::Approx(pr.coeff(k)).margin(1e-11));
    }
  }
}

TEST_CASE("fornberg weights: classic stencils") {
  auto w = fornberg_weights(1, {-1, 0, 1});
  REQUIRE(w[0] == Catch::Approx(-0.5));
  REQUIRE(w[1] == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(w[2] == Catch::Approx(0.5));
  w = fornberg_weights(2, {-1, 0, 1});
  REQUIRE(w[0] == Catch::Approx(1.0));
  REQUIRE(w[1] == Catch::Approx(-2.0));
  REQUIRE(w[2] == Catch::Approx(1.0));
  w = fornberg_weights(1, {-2, -1, 0, 1, 2});
  REQUIRE(w[0] == Catch::Approx(1.0 / 12));
  REQUIRE(w[1] == Catch::Approx(-2.0 / 3));
  REQUIRE(w[3] == Catch::Approx(2.0 / 3));
  REQUIRE(w[4] == Catch::Approx(-1.0 / 12));
}

TEST_CASE("FD jets converge to analytic jets at the declared order") {
  auto field = [](const Vec4& p, double* out) {
    out[0] = std::exp(0.3 * p[0]) * std::cos(p[1]) + p[2] * p[2] * p[3] -
             0.2 * p[0] * p[1] * p[2] * p[3];
  };
  auto analytic = [](const JetVec4& x) {
    return (0.3 * x[0]).exp() * x[1].cos() + x[2] * x[2] * x[3] -
           0.2 * x[0] * x[1] * x[2] * x[3];
  };
  std::array<double, 4> x0 = {0.1, -0.2, 0.3, 0.15};
  Jet exact = analytic(seed_jets(x0));
  // steps chosen so truncation dominates the 4th-derivative roundoff floor
  const std::pair<double, double> steps[] = {{0.08, 0.04}, {0.2, 0.1}, {0.5, 0.25}};
  const int orders[] = {2, 4, 6};
  for (int c = 0; c < 3; ++c) {
    double errs[2];
    int side = 0;
    for (double h : {steps[c].first, steps[c].second}) {
      Jet fd;
      fd_jets(field, x0, orders[c], h, 1, &fd);
      double err = 0;
      for (int k = 0; k < Jet::kCoeffs; ++k)
        err = std::max(err, std::abs(fd.coeff(k) - exact.coeff(k)));
      errs[side++] = err;
    }
    if (errs[1] > 1e-12) {
      double rate = std::log2(errs[0] / errs[1]);
      REQUIRE(rate > orders[c] - 0.7);
    } else {
      REQUIRE(errs[1] < 1e-12);  // noise floor reached; still far below need
    }
  }
}
