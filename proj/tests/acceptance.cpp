// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <random>

#include "grs/conformal.hpp"
#include "grs/flow.hpp"
#include "grs/verify.hpp"
#include "grs/zoo.hpp"

using namespace grs;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
  if (!pass) ++g_failures;
}

double rel(double resid, double scale) { return std::abs(resid) / std::max(1.0, scale); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> gauss;
  const int N = 10000;
  double worst = 0;
  for (int t = 0; t < N; ++t) {
    SyntheticJetOptions opt;
    opt.lambda = 0.4 + 0.13 * (t % 9);
    PointGeometry pg = synthetic_soliton_jet(rng, opt);
    const double rs = std::sqrt(pg.R.norm2());
    const double fs = norm(pg.gradf);
    const double ss = norm(pg.gradS);
    const double s1 = rs * (1 + fs);
    const double s2 = ss * ss + fs * fs + rs * rs * fs * fs + std::abs(pg.S) * fs * fs;

    auto iw = interior_weyl(pg);
    worst = std::max({worst, rel(iw.weyl_residual, s1), rel(iw.gg_residual, fs),
                      rel(iw.rcg_residual, s1), rel(iw.h_residual, s1 + fs)});
    auto pt = pairing_table_residuals(pg);
    worst = std::max(worst, rel(pt.max(), s2));
    auto ort = orthogonality_residuals(pg);
    worst = std::max(worst, rel(ort.max(), s2));
    auto d = decompose(pg.R);
    // Lemma WCC
    Mat3 cb = hodge_block(pg.R, +1, -1);
    Mat3 ct{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) ct[a][b] = cb[b][a];
    double wcc = mat3_inner(weyl_pm(d.W, +1).block, mat3_mul(cb, ct)) -
                 0.25 * inner(pm_extension(d.W, +1), kulkarni_nomizu(pg.Rc, pg.Rc));
    worst = std::max(worst, rel(wcc, rs * rs));
    // <H, W> = 0
    double hw = inner(kulkarni_nomizu(pg.hessf, SymMat4::identity()), d.W);
    worst = std::max(worst, rel(hw, rs * (rs + std::abs(pg.lambda))));
    // rigidRc1 and Dequal0 (3)->(1) on an eigenstructure point
    PointGeometry ep = make_eigenstructure_point(rng, gauss(rng), gauss(rng));
    auto efw = framework_tensors(ep);
    auto ed = decompose(ep.R);
    double es = std::sqrt(ep.R.norm2());
    worst = std::max(worst, rel(inner(ed.W, kulkarni_nomizu(ep.Rc, ep.Rc)), es * es));
    worst = std::max(worst, rel(std::sqrt(efw.D.norm2()), es + std::abs(ep.S)));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = worst < 1e-10 && secs < 30.0;
  report(1, pass,
         fmt("algebraic identity suite on 10^4 synthetic jets: worst rel residual %.2e "
             "(tol 1e-10), runtime %.1fs (< 30s)",
             worst, secs));
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
  std::mt19937_64 rng(5150);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
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
          worst = std::max(worst, rel(c1 - (i == j ? n2 : 0.0), n2));
          worst = std::max(worst, rel(c2 - (i == j ? 0.5 * n2 : 0.0), n2));
        }
    }
  }
  report(2, worst < 1e-12,
         fmt("Lemma 2.2 contractions on 10^3 random W±: worst %.2e (tol 1e-12)", worst));
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
  // desk-scale S2(1)xR2
  PointGeometry pg;
  pg.R.m[0][0] = 1.0;
  pg.Rc = SymMat4::diag(1, 1, 0, 0);
  pg.S = 2.0;
  pg.lambda = 1.0;
  pg.hessf = SymMat4::diag(0, 0, 1, 1);
  pg.gradf = {0, 0, 0.5, 0.5};
  auto d = decompose(pg.R);
  Mat3 wp = weyl_pm(d.W, +1).block;
  double t1 = 4 * pg.lambda * mat3_norm2(wp);
  double t2 = 36 * mat3_det(wp);
  double t3 = inner(kulkarni_nomizu(pg.Rc, pg.Rc), pm_extension(d.W, +1));
  double sum = bochner_rhs(pg, 0.0).via_ricci;
  bool pass = std::abs(t1 - 2.0 / 3) < 1e-12 && std::abs(t2 - 1.0 / 3) < 1e-12 &&
              std::abs(t3 - 1.0 / 3) < 1e-12 && std::abs(sum) < 1e-9;
  // CP2 chart: bwdiv specialization S|W+|^2 = 36 det W+
  ChartPoint cp = chart_point_at(cp2_chart(), {0.2, 0.1, -0.15, 0.3}, ChartWant::Curvature);
  Mat3 wpc = hodge_block(cp.dec.W, +1, +1);
  double bw = cp.pg.S * mat3_norm2(wpc) - 36 * mat3_det(wpc);
  pass = pass && std::abs(bw) < 1e-6;
  report(3, pass,
         fmt("Bochner at desk scale: S2xR2 sum %.2e (tol 1e-9), CP2 S|W+|^2-36detW+ %.2e "
             "(tol 1e-6)",
             sum, bw));
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
  ChartGeometry c = s2xr2_chart(1.0);
  double worst = 0;
  for (const Vec4& x : sample_points(c.domain, 5, 404)) {
    ChartPoint cp = chart_point_at(c, x, ChartWant::SecondJets);
    CurvOp rhs = delta_f_weyl_rhs(cp.pg, 1e-6);
    CurvOp lhs = cp.lapW;
    for (int e = 0; e < 4; ++e) lhs -= cp.pg.gradf[e] * cp.gradW[e];
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q)
        worst = std::max(worst, std::abs(rhs.m[p][q] - lhs.m[p][q]));
  }
  report(4, worst < 1e-6,
         fmt("Delta_f W formula, full 6x6 on S2xR2 chart jets: worst %.2e (tol 1e-6)", worst));
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
  double worst = 0;
  for (const char* name :
       {"gaussian", "sphere4", "cylinder_s3xr", "s2xr2", "s2xs2", "cp2_fubini_study"}) {
    ChartGeometry c = zoo_by_name(name).chart;
    for (const Vec4& x : sample_points(c.domain, 3, 505)) {
      ChartPoint cp = chart_point_at(c, x, ChartWant::FirstJets);
      double rs = std::max(1.0, std::sqrt(cp.pg.R.norm2()));
      auto f2 = divergence_field_fd_residuals(c, x, 1e-2, 4);
      worst = std::max(worst, rel(f2.max(), rs));
      auto dr = divergence_representation_residuals(cp.pg, 1e-6);
      worst = std::max(worst, rel(std::max({dr.riemann, dr.s_gg, dr.ricci_g, dr.weyl,
                                            dr.div_free_f}),
                                  rs));
    }
  }
  // soliton-free rows on the random polynomial chart
  ChartGeometry rp = random_polynomial_chart(7, 0.05);
  for (const Vec4& x : sample_points(rp.domain, 3, 506)) {
    ChartPoint cp = chart_point_at(rp, x, ChartWant::FirstJets);
    double rs = std::max(1.0, std::sqrt(cp.pg.R.norm2()));
    auto gd = general_divergence_residuals(cp);
    worst = std::max(worst, rel(gd.max(), rs));
    auto f2 = divergence_field_fd_residuals(rp, x, 1e-2, 4);
    worst = std::max(worst, rel(f2.max(), rs));
  }
  verify::SuiteConfig cfg;
  cfg.fd_step = 8e-2;
  cfg.fd_order = 4;
  auto st = verify::convergence_study(cfg, "diff.div.weyl");
  bool pass = worst < 1e-5 && st.observed_order >= 3.5;
  report(5, pass,
         fmt("divergence representations: worst rel residual %.2e (tol 1e-5), observed FD "
             "order %.2f (>= 3.5)",
             worst, st.observed_order));
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
  ZooEntry s4 = zoo_by_name("sphere4");
  Vec4 x0 = sample_points(s4.chart.domain, 1, 606)[0];
  double gb = gauss_bonnet_integrand(chart_point_at(s4.chart, x0, ChartWant::Curvature).pg.R);
  double chi_resid = std::abs(gb * s4.expect.volume - 16 * M_PI * M_PI) / (16 * M_PI * M_PI);

  ZooEntry cp2 = zoo_by_name("cp2_fubini_study");
  Vec4 x1 = sample_points(cp2.chart.domain, 1, 607)[0];
  CurvOp r1 = chart_point_at(cp2.chart, x1, ChartWant::Curvature).pg.R;
  double ratio = gauss_bonnet_integrand(r1) / signature_integrand(r1);
  double ratio_resid = std::abs(ratio - 2.0) / 2.0;

  ZooEntry s22 = zoo_by_name("s2xs2");
  Vec4 x2 = sample_points(s22.chart.domain, 1, 608)[0];
  double sig = signature_integrand(chart_point_at(s22.chart, x2, ChartWant::Curvature).pg.R);

  bool pass = chi_resid < 1e-3 && ratio_resid < 1e-3 && std::abs(sig) < 1e-10;
  report(6, pass,
         fmt("topological integrands: S4 8pi^2chi rel %.2e, CP2 ratio rel %.2e, S2xS2 "
             "signature %.2e",
             chi_resid, ratio_resid, sig));
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
  ScalarField u = make_scalar_field([](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T s = 1.0 + 0.13 * x[0] - 0.21 * x[1] + 0.4 * x[2] * x[3] + 0.17 * x[0] * x[0] +
          0.09 * x[1] * x[2] * x[3];
    return s;
  });
  ChartGeometry rp = random_polynomial_chart(7, 0.05);  // FD policy, order 4
  double worst = 0;
  for (const Vec4& x : sample_points(rp.domain, 3, 707, 0.25)) {
    auto r = conformal_residuals(rp, u, x);
    worst = std::max(worst, r.max());
  }
  verify::SuiteConfig cfg;
  cfg.fd_step = 4e-2;
  cfg.fd_order = 4;
  auto st1 = verify::convergence_study(cfg, "conf.confcov");
  auto st2 = verify::convergence_study(cfg, "conf.divw");
  bool pass = worst < 1e-5 && st1.observed_order >= 3.5 && st2.observed_order >= 3.5;
  report(7, pass,
         fmt("conformal suite on (random_polynomial, generic u): worst %.2e (tol 1e-5), "
             "observed orders %.2f / %.2f (>= 3.5)",
             worst, st1.observed_order, st2.observed_order));
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
  ChartGeometry rp = random_polynomial_chart(7, 0.05);
  Vec4 x = {0.06, -0.03, 0.05, 0.02};
  auto r1 = flow_variation_weyl_at(rp, x, 4e-3);
  auto r2 = flow_variation_weyl_at(rp, x, 2e-3);
  auto flat = flow_variation_weyl_at(gaussian_chart(0.4), {0.1, 0.2, -0.1, 0.3}, 1e-3);
  bool improving = r2.evol_wplus_residual <= r1.evol_wplus_residual &&
                   r2.evol_w2_residual <= r1.evol_w2_residual;
  bool pass = r2.evol_wplus_residual < 1e-3 && r2.evol_w2_residual < 1e-3 && improving &&
              flat.evol_wplus_residual < 1e-12 && flat.evol_w2_residual < 1e-12;
  report(8, pass,
         fmt("flow suite: evolW+ %.2e, evolW2 %.2e (tol 1e-3, improving under refinement; "
             "flat exact %.1e)",
             r2.evol_wplus_residual, r2.evol_w2_residual, flat.evol_wplus_residual));
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
  std::mt19937_64 rng(909);
  std::normal_distribution<double> gauss;
  double worst_rc = 0, worst_i4 = 0, worst_gv = 0;
  for (int t = 0; t < 1000; ++t) {
    PointGeometry ep = make_eigenstructure_point(rng, gauss(rng), gauss(rng));
    auto d = decompose(ep.R);
    double es = std::sqrt(ep.R.norm2());
    worst_rc = std::max(worst_rc, rel(inner(d.W, kulkarni_nomizu(ep.Rc, ep.Rc)), es * es));

    PointGeometry pg = synthetic_soliton_jet(rng);
    auto rg = rigidity_predicates(pg, gauss(rng), gauss(rng), gauss(rng));
    worst_i4 = std::max(worst_i4,
                        rel(rg.improved4, norm(pg.gradf) * pg.R.norm2()));
    worst_gv = std::max(worst_gv, rel(rg.t_restricted_gap, rg.t_norm * rg.t_norm));
  }
  bool pass = worst_rc < 1e-12 && worst_i4 < 1e-12 && worst_gv < 1e-12;
  report(9, pass,
         fmt("rigidity algebra: (1,3)-pattern %.2e, improved4 contraction %.2e, genvan ii "
             "%.2e (tol 1e-12)",
             worst_rc, worst_i4, worst_gv));
}

// --------------------------------------------------------------- criterion 10
void criterion10() {
  // Einstein entries: both sides of the integral identity vanish pointwise
  double worst_int = 0;
  for (const char* name : {"sphere4", "s2xs2", "cp2_fubini_study"}) {
    ChartGeometry c = zoo_by_name(name).chart;
    for (const Vec4& x : sample_points(c.domain, 2, 1010)) {
      ChartPoint cp = chart_point_at(c, x, ChartWant::FirstJets);
      double lhs = inner(cp.dec.W, kulkarni_nomizu(cp.pg.Rc, cp.pg.Rc));
      double rhs = 4.0 * fw_divergence(cp.gradW).norm2();
      worst_int = std::max({worst_int, rel(lhs, cp.pg.R.norm2()), rhs});
    }
  }
  // Kato sampling over soliton charts
  double worst_kato = 0;
  for (const char* name : {"s2xr2", "cylinder_s3xr", "cp2_fubini_study"}) {
    ChartGeometry c = zoo_by_name(name).chart;
    for (const Vec4& x : sample_points(c.domain, 3, 1011)) {
      auto bc = bochner_check_at(c, x);
      worst_kato = std::max(worst_kato, -bc.kato_slack);
    }
  }
  // determinant estimate on 10^4 random spectra
  std::mt19937_64 rng(1012);
  std::normal_distribution<double> gauss;
  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    double a = gauss(rng), b = gauss(rng), c = -a - b;
    double det = a * b * c;
    double n3 = std::pow(a * a + b * b + c * c, 1.5);
    if (-18 * det > std::sqrt(6.0) * n3 + 1e-12) ++violations;
  }
  bool pass = worst_int < 1e-8 && worst_kato < 1e-10 && violations == 0;
  report(10, pass,
         fmt("substituted global identities: Einstein integrands %.2e, Kato slack >= -%.1e, "
             "det estimate violations %g/10^4",
             worst_int, worst_kato, static_cast<double>(violations)));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
