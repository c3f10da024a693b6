#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "grs/curvature.hpp"
#include "grs/soliton.hpp"

using namespace grs;

namespace {
std::mt19937_64 rng(77);

SymMat4 rand_sym() {
  std::normal_distribution<double> g;
  SymMat4 s;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) s.m[i][j] = s.m[j][i] = g(rng);
  return s;
}

/// curvature of S^2(1) x R^2 in the product frame: R_1212 = 1, rest 0
CurvOp s2xr2_curv() {
  CurvOp r;
  r.m[0][0] = 1.0;
  return r;
}
}  // namespace

TEST_CASE("kulkarni-nomizu basics") {
  SymMat4 g = SymMat4::identity();
  CurvOp gg = kulkarni_nomizu(g, g);
  REQUIRE(gg.r4(0, 1, 0, 1) == 2.0);
  // as operator on Lambda^2, g∘g = 2 Id: brute-force all 36 entries
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) REQUIRE(gg.m[p][q] == (p == q ? 2.0 : 0.0));

  SECTION("commutative, symmetric, first Bianchi") {
    SymMat4 a = rand_sym(), b = rand_sym();
    CurvOp ab = kulkarni_nomizu(a, b), ba = kulkarni_nomizu(b, a);
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) REQUIRE(ab.m[p][q] == Catch::Approx(ba.m[p][q]).margin(1e-14));
    auto d = validate_curvature(ab);
    REQUIRE(d.symmetry_residual < 1e-13);
    REQUIRE(std::abs(d.bianchi_residual) < 1e-13);
  }

  SECTION("<W, b∘g> = 0 for Weyl W and symmetric b") {
    for (int t = 0; t < 20; ++t) {
      CurvOp w = random_weyl(rng);
      SymMat4 b = rand_sym();
      REQUIRE(std::abs(inner(w, kulkarni_nomizu(b, SymMat4::identity()))) < 1e-11);
    }
  }
}

TEST_CASE("validate_curvature reports violations") {
  SymMat4 g = SymMat4::identity();
  auto d = validate_curvature(kulkarni_nomizu(g, g));
  REQUIRE(d.symmetry_residual == 0.0);
  REQUIRE(d.bianchi_residual == 0.0);

  std::normal_distribution<double> gs;
  CurvOp bad;
  for (int p = 0; p < 6; ++p)
    for (int q = p; q < 6; ++q) bad.m[p][q] = bad.m[q][p] = gs(rng);
  bad.m[0][3] += 1.0;
  bad.m[3][0] += 1.0;  // tr A+ != tr A-
  REQUIRE(std::abs(validate_curvature(bad).bianchi_residual) > 0.5);
}

TEST_CASE("decomposition") {
  SECTION("R = g∘g") {
    auto d = decompose(kulkarni_nomizu(SymMat4::identity(), SymMat4::identity()));
    REQUIRE(d.S == Catch::Approx(24.0));
    REQUIRE(d.W.norm2() < 1e-24);
    REQUIRE(d.E.norm2() < 1e-24);
  }
  SECTION("S2 x R2") {
    auto d = decompose(s2xr2_curv());
    REQUIRE(d.S == Catch::Approx(2.0));
    Mat3 wp = weyl_pm(d.W, +1).block;
    // spectrum (1/3, -1/6, -1/6)
    REQUIRE(mat3_trace(wp) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(mat3_norm2(wp) == Catch::Approx(1.0 / 6.0));
    REQUIRE(mat3_det(wp) == Catch::Approx(1.0 / 108.0));
  }
  SECTION("random curvature: reconstruction and norms") {
    for (int t = 0; t < 30; ++t) {
      CurvOp r = random_curvature(rng);
      auto d = decompose(r);
      CurvOp rec = d.W + d.U + d.V;
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) REQUIRE(rec.m[p][q] == Catch::Approx(r.m[p][q]).margin(1e-12));
      REQUIRE(r.norm2() ==
              Catch::Approx(d.W.norm2() + d.U.norm2() + d.V.norm2()).margin(1e-10));
      REQUIRE(d.U.norm2() == Catch::Approx(d.S * d.S / 24.0).margin(1e-11));
      REQUIRE(d.V.norm2() == Catch::Approx(0.5 * d.E.norm2()).margin(1e-11));
      // W is fully traceless and block-diagonal
      SymMat4 wrc = ricci_contraction(d.W);
      REQUIRE(wrc.norm2() < 1e-22);
      REQUIRE(mat3_norm2(hodge_block(d.W, +1, -1)) < 1e-22);
      // A± = W± + S/12, |A±|^2 = |W±|^2 + S^2/48
      for (int sign : {+1, -1}) {
        Mat3 a = hodge_block(r, sign, sign);
        Mat3 w = weyl_pm(d.W, sign).block;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            REQUIRE(a[i][j] ==
                    Catch::Approx(w[i][j] + (i == j ? d.S / 12.0 : 0.0)).margin(1e-11));
        REQUIRE(mat3_norm2(a) ==
                Catch::Approx(mat3_norm2(w) + d.S * d.S / 48.0).margin(1e-9));
      }
      // |E|^2 = |Rc|^2 - S^2/4 = 4|C|^2
      Mat3 c = hodge_block(r, +1, -1);
      REQUIRE(d.E.norm2() == Catch::Approx(d.Rc.norm2() - d.S * d.S / 4.0).margin(1e-9));
      REQUIRE(d.E.norm2() == Catch::Approx(4.0 * mat3_norm2(c)).margin(1e-9));
    }
  }
  SECTION("Einstein input has no C block") {
    CurvOp w = random_weyl(rng);
    double s = 3.7;
    CurvOp r = w + (s / 24.0) * kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
    REQUIRE(mat3_norm2(hodge_block(r, +1, -1)) < 1e-22);
  }
  SECTION("Bianchi violation rejected") {
    CurvOp bad;
    bad.m[0][3] = bad.m[3][0] = 1.0;
    REQUIRE_THROWS_AS(decompose(bad), std::invalid_argument);
  }
}

TEST_CASE("Lemma 2.2 contractions") {
  for (int t = 0; t < 40; ++t) {
    CurvOp w = random_weyl(rng);
    for (int sign : {+1, -1}) {
      CurvOp wx = pm_extension(w, sign);
      double n2 = mat3_norm2(weyl_pm(w, sign).block);
      double w4[4][4][4][4];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) w4[i][j][k][l] = wx.r4(i, j, k, l);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double c1 = 0, c2 = 0;
          for (int k = 0; k < 4; ++k)
            for (int p = 0; p < 4; ++p)
              for (int q = 0; q < 4; ++q) {
                c1 += w4[i][k][p][q] * w4[j][k][p][q];
                c2 += w4[i][k][p][q] * w4[k][p][q][j];
              }
          REQUIRE(c1 == Catch::Approx((i == j) ? n2 : 0.0).margin(1e-11));
          REQUIRE(c2 == Catch::Approx((i == j) ? 0.5 * n2 : 0.0).margin(1e-11));
        }
    }
  }
}

TEST_CASE("determinant estimate and norms") {
  SECTION("S2xR2 values") {
    auto d = decompose(s2xr2_curv());
    REQUIRE(det_wpm(d.W, +1) == Catch::Approx(1.0 / 108.0));
    REQUIRE(mat3_norm2(weyl_pm(d.W, +1).block) == Catch::Approx(1.0 / 6.0));
    REQUIRE(d.W.norm2() == Catch::Approx(mat3_norm2(weyl_pm(d.W, +1).block) +
                                         mat3_norm2(weyl_pm(d.W, -1).block)));
  }
  SECTION("zero Weyl") {
    auto d = decompose(kulkarni_nomizu(SymMat4::identity(), SymMat4::identity()));
    REQUIRE(d.W.norm2() == Catch::Approx(0.0).margin(1e-20));
  }
  SECTION("-18 det W <= sqrt6 |W|^3 on random traceless diagonals") {
    std::normal_distribution<double> g;
    for (int t = 0; t < 10000; ++t) {
      double a = g(rng), b = g(rng);
      double c = -a - b;
      double det = a * b * c;
      double n3 = std::pow(a * a + b * b + c * c, 1.5);
      REQUIRE(-18.0 * det <= std::sqrt(6.0) * n3 + 1e-12);
      REQUIRE(18.0 * det <= std::sqrt(6.0) * n3 + 1e-12);
    }
    // equality case: diag(1,1,-2)w
    double w = 0.37;
    double det = -2 * w * w * w;
    REQUIRE(-18 * det == Catch::Approx(std::sqrt(6.0) * std::pow(6 * w * w, 1.5)));
  }
}

TEST_CASE("topological integrands") {
  SECTION("round S4") {
    // R = (1/2) g∘g gives sectional curvature 1, S = 12
    CurvOp r = 0.5 * kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
    auto d = decompose(r);
    REQUIRE(d.S == Catch::Approx(12.0));
    REQUIRE(gauss_bonnet_integrand(r) == Catch::Approx(6.0));
    double vol = 8.0 * M_PI * M_PI / 3.0;
    REQUIRE(gauss_bonnet_integrand(r) * vol == Catch::Approx(16.0 * M_PI * M_PI));
    REQUIRE(signature_integrand(r) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(hitchin_thorpe_check(r));
  }
  SECTION("CP2 model: integrand ratio 2") {
    const double S = 24.0;
    auto bp = hodge_basis(+1);
    CurvOp w;
    const double ev[3] = {S / 6, -S / 12, -S / 12};
    for (int k = 0; k < 3; ++k)
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) w.m[p][q] += ev[k] * bp[k][p] * bp[k][q];
    CurvOp r = w + (S / 24.0) * kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
    REQUIRE(gauss_bonnet_integrand(r) / signature_integrand(r) == Catch::Approx(2.0));
    REQUIRE(hitchin_thorpe_check(r));
  }
  SECTION("S2xS2: signature vanishes") {
    CurvOp r;
    r.m[0][0] = 1.0;
    r.m[3][3] = 1.0;
    REQUIRE(signature_integrand(r) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(hitchin_thorpe_check(r));
  }
  SECTION("flat") {
    CurvOp r;
    REQUIRE(gauss_bonnet_integrand(r) == 0.0);
    REQUIRE(signature_integrand(r) == 0.0);
  }
  SECTION("non-Einstein rejected") {
    REQUIRE_THROWS_AS(hitchin_thorpe_check(s2xr2_curv()), std::invalid_argument);
  }
}
