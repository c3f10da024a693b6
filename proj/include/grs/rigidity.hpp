#pragma once

// The modified curvature Rbar = R + H/2, its normal form and sectional range,
// the sectional lower-bound consequences, the isotropic-curvature quantity,
// and the algebraic rigidity predicates.

#include <limits>

#include "grs/framework.hpp"
#include "grs/normal_form.hpp"

namespace grs {

struct RbarResult {
  CurvOp H;     // Hess f ∘ g
  CurvOp Rbar;  // R + H/2
  NormalForm normal_form;
  double Kmin = 0, Kmax = 0;  // extremes of the modified sectional curvature
  // residuals
  double h_block_a = 0;       // Hodge diagonal blocks of H vs (Δf/2) Id
  double h_block_b = 0;       // mixed block of H vs the explicit Hessian matrix
  double rbar_identity = 0;   // Rbar vs W + (λ/2 - S/12) g∘g
  double rbar_cblock = 0;
  double abar_pm = 0;         // Hodge blocks of Rbar vs W± + (λ - S/6) Id
  double hw_inner = 0;        // <H, W>
};

inline RbarResult rbar_and_sectional(const PointGeometry& pg, double tol = 1e-8) {
  require_soliton(pg, tol);
  RbarResult out;
  const SymMat4 g = SymMat4::identity();
  out.H = kulkarni_nomizu(pg.hessf, g);
  out.Rbar = pg.R + 0.5 * out.H;
  CurvatureDecomposition d = decompose(pg.R);
  const double lapf = pg.hessf.trace();

  Mat3 ha_p = hodge_block(out.H, +1, +1), ha_m = hodge_block(out.H, -1, -1);
  Mat3 hb = hodge_block(out.H, +1, -1);
  const double* f = &pg.hessf.m[0][0];
  auto fij = [&](int i, int j) { return pg.hessf.m[i - 1][j - 1]; };
  (void)f;
  Mat3 hb_expected = {{{0.5 * (fij(1, 1) + fij(2, 2) - fij(3, 3) - fij(4, 4)),
                        fij(2, 3) - fij(1, 4), fij(2, 4) + fij(1, 3)},
                       {fij(2, 3) + fij(1, 4),
                        0.5 * (fij(1, 1) + fij(3, 3) - fij(2, 2) - fij(4, 4)),
                        fij(3, 4) - fij(1, 2)},
                       {fij(2, 4) - fij(1, 3), fij(3, 4) + fij(1, 2),
                        0.5 * (fij(1, 1) + fij(4, 4) - fij(2, 2) - fij(3, 3))}}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double ida = (a == b) ? lapf / 2 : 0.0;
      out.h_block_a = std::max(out.h_block_a, std::abs(ha_p[a][b] - ida));
      out.h_block_a = std::max(out.h_block_a, std::abs(ha_m[a][b] - ida));
      out.h_block_b = std::max(out.h_block_b, std::abs(hb[a][b] - hb_expected[a][b]));
    }
  CurvOp rbar_expected =
      d.W + (pg.lambda / 2.0 - pg.S / 12.0) * kulkarni_nomizu(g, g);
  out.rbar_identity = 0;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      out.rbar_identity =
          std::max(out.rbar_identity, std::abs(out.Rbar.m[p][q] - rbar_expected.m[p][q]));
  out.rbar_cblock = std::sqrt(mat3_norm2(hodge_block(out.Rbar, +1, -1)));
  for (int sign : {+1, -1}) {
    Mat3 abar = hodge_block(out.Rbar, sign, sign);
    Mat3 wpm = weyl_pm(d.W, sign).block;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double expect = wpm[a][b] + ((a == b) ? (pg.lambda - pg.S / 6.0) : 0.0);
        out.abar_pm = std::max(out.abar_pm, std::abs(abar[a][b] - expect));
      }
  }
  out.hw_inner = inner(out.H, d.W);
  out.normal_form = berger_normal_form(out.Rbar, 1e-6);
  out.Kmin = out.normal_form.a[0];
  out.Kmax = out.normal_form.a[2];
  return out;
}

struct SectionalBoundReport {
  double eps = 0;
  double Kmin = 0;
  // slack of each consequence (>= 0 when the implication holds)
  double slack_trace = 0;       // S + 3Δf - 12 ε λ
  double slack_scalar = 0;      // 6(1-ε)λ - S
  double slack_lap = 0;         // Δf - 2(3ε-1)λ
  double slack_weyl = 0;        // 2(1-ε)λ - S/3 - (|W+|+|W-|)/sqrt6
  bool equality_case = false;   // slack_weyl ~ 0
  double equality_spectrum_residual = 0;  // W± vs a± diag(-1,-1,2) pattern when equality
  double ricci_quadratic = 0;   // |Rc|^2 - S^2/2 + 4λ^2 (0 on Einstein points)
  double lap_s_pointwise = 0;   // 2|Rc|^2 - 2λS - <df,dS> (0 when ΔS = 0)
};

/// consequences of the modified sectional lower bound Kbar >= ε λ (ε < 1/3)
inline SectionalBoundReport sectional_bound_report(const PointGeometry& pg, double eps,
                                                   double tol = 1e-8) {
  if (eps >= 1.0 / 3.0) throw std::invalid_argument("sectional bound requires eps < 1/3");
  RbarResult rb = rbar_and_sectional(pg, tol);
  double scale = std::max(1.0, std::abs(pg.lambda));
  if (rb.Kmin < eps * pg.lambda - 1e-9 * scale)
    throw std::invalid_argument("point violates the hypothesis Kbar >= eps*lambda");
  CurvatureDecomposition d = decompose(pg.R);
  Mat3 wp = weyl_pm(d.W, +1).block, wm = weyl_pm(d.W, -1).block;
  const double lapf = pg.hessf.trace(), lam = pg.lambda, S = pg.S;
  SectionalBoundReport r;
  r.eps = eps;
  r.Kmin = rb.Kmin;
  r.slack_trace = S + 3 * lapf - 12 * eps * lam;
  r.slack_scalar = 6 * (1 - eps) * lam - S;
  r.slack_lap = lapf - 2 * (3 * eps - 1) * lam;
  double wsum = std::sqrt(mat3_norm2(wp)) + std::sqrt(mat3_norm2(wm));
  r.slack_weyl = 2 * (1 - eps) * lam - S / 3.0 - wsum / std::sqrt(6.0);
  r.equality_case = std::abs(r.slack_weyl) <= 1e-9 * scale;
  if (r.equality_case) {
    // equality forces W± proportional to diag(-1,-1,2) in the normal frame
    for (const Mat3& w : {wp, wm}) {
      Mat3 v;
      Vec3 ev;
      detail::oriented_eigh(w, v, ev);
      double a = -ev[0];
      r.equality_spectrum_residual = std::max(
          r.equality_spectrum_residual,
          std::max(std::abs(ev[0] + a), std::max(std::abs(ev[1] + a), std::abs(ev[2] - 2 * a))));
    }
  }
  r.ricci_quadratic = pg.Rc.norm2() - S * S / 2.0 + 4 * lam * lam;
  Vec4 gS = pg.Rc.apply(pg.gradf);
  for (auto& x : gS) x *= 2.0;
  r.lap_s_pointwise = 2 * pg.Rc.norm2() - 2 * lam * S - dot(pg.gradf, gS);
  return r;
}

/// smallest eigenvalue of (S/3) - 2W± over both orientations
inline double isotropic_u(const PointGeometry& pg) {
  CurvatureDecomposition d = decompose(pg.R);
  double u = std::numeric_limits<double>::infinity();
  for (int sign : {+1, -1}) {
    Mat3 w = weyl_pm(d.W, sign).block;
    Mat3 v;
    Vec3 ev;
    detail::oriented_eigh(w, v, ev);
    u = std::min(u, pg.S / 3.0 - 2.0 * ev[2]);
  }
  return u;
}

struct RigidityReport {
  // (a) Ricci eigenvalue pattern (1, n-1)  =>  <W, Rc∘Rc> = 0
  bool rc_pattern_applies = false;
  double w_rcrc = 0;  // <W, Rc∘Rc> (meaningful when the pattern applies)
  // (b) gradient-eigenvector equivalences: residuals of items (1),(2),(3),
  //     and (4),(5) through the divergence representations
  double eigen_gradf = 0;   // |Rc df - mu df|
  double q_on_gradf = 0;    // max |Q(., gradf)|
  double m_on_gradf = 0;    // max |M(., gradf)|
  double dw_on_gradf = 0;   // max |δW(gradf, .)| via Cotton representation
  double dh_on_gradf = 0;   // max |δH(gradf, .)|
  // (c) T = aQ + bM + cN structure
  double t_norm = 0;
  double t_restricted_gap = 0;  // | |T|^2 restricted to Λ+ minus restricted to Λ- |
  // (d) D on eigenstructure points
  double d_norm = 0;
  // (e) contraction step: Σ_i f_i W+_{ijkl} W+_{ajkl} = f_a |W+|^2
  double gradient_contraction = 0;
  // (f) <W+, C C^T> - (1/4) <W+, Rc∘Rc>
  double cblock_gram = 0;
};

/// detects the (1, n-1) Ricci eigenvalue pattern within tolerance
inline bool ricci_pattern_1_3(const SymMat4& rc, double tol = 1e-8) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rc.m[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
  auto ev = es.eigenvalues();
  double scale = std::max(1.0, std::abs(ev(3)) + std::abs(ev(0)));
  // three equal on one side
  bool low = (std::abs(ev(0) - ev(1)) < tol * scale) && (std::abs(ev(1) - ev(2)) < tol * scale);
  bool high = (std::abs(ev(1) - ev(2)) < tol * scale) && (std::abs(ev(2) - ev(3)) < tol * scale);
  return low || high;
}

inline RigidityReport rigidity_predicates(const PointGeometry& pg, double a = 0.0,
                                          double b = 0.0, double c = 0.0,
                                          double tol = 1e-8) {
  RigidityReport r;
  CurvatureDecomposition d = decompose(pg.R);
  const int n = pg.n;
  r.rc_pattern_applies = ricci_pattern_1_3(pg.Rc, 1e-9);
  r.w_rcrc = inner(d.W, kulkarni_nomizu(pg.Rc, pg.Rc));

  FrameworkTensors fw = framework_tensors(pg, tol);
  Vec4 rg = pg.Rc.apply(pg.gradf);
  double df2 = dot(pg.gradf, pg.gradf);
  if (df2 > 0) {
    double mu = dot(rg, pg.gradf) / df2;
    for (int i = 0; i < 4; ++i)
      r.eigen_gradf = std::max(r.eigen_gradf, std::abs(rg[i] - mu * pg.gradf[i]));
  }
  FrameworkTensor dw = ((n - 3.0) / (n - 2.0)) * fw.C;
  FrameworkTensor dh = 0.5 * fw.Q - fw.P;  // divergence representation of H
  for (int s = 0; s < 6; ++s) {
    // items (2)-(5): the Z slot of each representation evaluated at gradf
    double q = 0, m2 = 0, w1 = 0, h1 = 0;
    for (int k = 0; k < 4; ++k) {
      q += fw.Q.t[s][k] * pg.gradf[k];
      m2 += fw.M.t[s][k] * pg.gradf[k];
      w1 += dw.t[s][k] * pg.gradf[k];
      h1 += dh.t[s][k] * pg.gradf[k];
    }
    r.q_on_gradf = std::max(r.q_on_gradf, std::abs(q));
    r.m_on_gradf = std::max(r.m_on_gradf, std::abs(m2));
    r.dw_on_gradf = std::max(r.dw_on_gradf, std::abs(w1));
    r.dh_on_gradf = std::max(r.dh_on_gradf, std::abs(h1));
  }
  FrameworkTensor T = a * fw.Q + b * fw.M + c * fw.N;
  r.t_norm = std::sqrt(T.norm2());
  r.t_restricted_gap = std::abs(norm2_pm(T, +1) - norm2_pm(T, -1));
  r.d_norm = std::sqrt(fw.D.norm2());

  // (e): Σ_i f_i W+_{ijkl} W+_{ajkl} = f_a |W+|^2 (contraction identity route)
  CurvOp wp_ext = pm_extension(d.W, +1);
  double w4[4][4][4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) w4[i][j][k][l] = wp_ext.r4(i, j, k, l);
  double w2 = mat3_norm2(weyl_pm(d.W, +1).block);
  for (int aa = 0; aa < 4; ++aa) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) s += pg.gradf[i] * w4[i][j][k][l] * w4[aa][j][k][l];
    r.gradient_contraction =
        std::max(r.gradient_contraction, std::abs(s - pg.gradf[aa] * w2));
  }
  Mat3 cb = hodge_block(pg.R, +1, -1);
  Mat3 cct = mat3_mul(cb, [&] {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t[i][j] = cb[j][i];
    return t;
  }());
  r.cblock_gram = std::abs(mat3_inner(weyl_pm(d.W, +1).block, cct) -
                   0.25 * inner(wp_ext, kulkarni_nomizu(pg.Rc, pg.Rc)));
  return r;
}

/// point with gradf an eigenvector of Rc (eigenvalue zeta) and the orthogonal
/// complement isotropic (eigenvalue eta); the construction behind the D = 0
/// equivalence and the (1, n-1) Ricci pattern tests
template <class Rng>
inline PointGeometry make_eigenstructure_point(Rng& rng, double eta, double zeta,
                                               double lambda = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec4 u;
  double nn = 0;
  do {
    for (auto& x : u) x = gauss(rng);
    nn = norm(u);
  } while (nn < 1e-6);
  for (auto& x : u) x /= nn;
  SymMat4 rc;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rc.m[i][j] = eta * ((i == j) ? 1.0 : 0.0) + (zeta - eta) * u[i] * u[j];
  PointGeometry pg;
  pg.lambda = lambda;
  pg.Rc = rc;
  pg.S = rc.trace();
  pg.hessf = lambda * SymMat4::identity() - rc;
  double scale = gauss(rng);
  for (int i = 0; i < 4; ++i) pg.gradf[i] = scale * u[i];
  // curvature with this Ricci: W random Weyl + the U/V parts of rc
  CurvOp w = random_weyl(rng);
  SymMat4 e = rc - (pg.S / 4.0) * SymMat4::identity();
  pg.R = w + (pg.S / 24.0) * kulkarni_nomizu(SymMat4::identity(), SymMat4::identity()) +
         0.5 * kulkarni_nomizu(e, SymMat4::identity());
  return pg;
}

}  // namespace grs
