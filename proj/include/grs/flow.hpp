#pragma once

// First-order Ricci-flow variation at a point: centered t-differences of the
// metric family g_t(x) = g(x) - 2 t Rc_g(x), with the frame transported by
// exp(t Rc) and symmetrically re-orthonormalized (Uhlenbeck gauge; the polar
// correction is even in t so centered differences stay second order).
//
// The sharp operator on the Lambda^2_+ block is the adjugate, pinned by
// <W+, 2(W+)^2 + 4(W+)#> = 18 det W+.

#include "grs/chart.hpp"

namespace grs {

namespace flow_detail {

/// Ricci jets of a metric given its jets (valid to degree 2)
inline void ricci_jets(const MetricJets& mj, Jet rc[4][4]) {
  Jet Ginv[4][4];
  chart_detail::invert_jet_matrix(mj.g, Ginv);
  Jet gam[4][4][4];
  Jet dg[4][4][4];
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        dg[k][i][j] = mj.g[i][j].partial(k);
        dg[k][j][i] = dg[k][i][j];
      }
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        Jet s;
        for (int b = 0; b < 4; ++b)
          s += Jet::mul(Ginv[a][b], dg[i][j][b] + dg[j][i][b] - dg[b][i][j], 3);
        gam[a][i][j] = s * 0.5;
        gam[a][j][i] = gam[a][i][j];
      }
  // Rc_{jl} = g^{ik} R_{ijkl} with R_{ijkl} = -g_{lm} T^m_{ijk}
  for (int j = 0; j < 4; ++j)
    for (int l = j; l < 4; ++l) {
      Jet s;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
          for (int m = 0; m < 4; ++m) {
            Jet t = gam[m][j][k].partial(i) - gam[m][i][k].partial(j);
            for (int p = 0; p < 4; ++p)
              t += Jet::mul(gam[m][i][p], gam[p][j][k], 2) -
                   Jet::mul(gam[m][j][p], gam[p][i][k], 2);
            s += Jet::mul(Ginv[i][k], Jet::mul(mj.g[l][m], t, 2), 2);
          }
      rc[j][l] = -s;
      rc[l][j] = rc[j][l];
    }
}

/// frame-component curvature operator of a metric-jets record at one point,
/// with an externally supplied coordinate frame E (columns)
inline CurvOp curvature_in_frame(const MetricJets& mj, const Mat4& E) {
  Jet Ginv[4][4];
  chart_detail::invert_jet_matrix(mj.g, Ginv);
  Jet gam[4][4][4];
  Jet dg[4][4][4];
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        dg[k][i][j] = mj.g[i][j].partial(k);
        dg[k][j][i] = dg[k][i][j];
      }
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        Jet s;
        for (int b = 0; b < 4; ++b)
          s += Jet::mul(Ginv[a][b], dg[i][j][b] + dg[j][i][b] - dg[b][i][j], 1);
        gam[a][i][j] = s * 0.5;
        gam[a][j][i] = gam[a][i][j];
      }
  double r4[4][4][4][4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double up[4];
        for (int m = 0; m < 4; ++m) {
          double t = gam[m][j][k].partial(i).val() - gam[m][i][k].partial(j).val();
          for (int p = 0; p < 4; ++p)
            t += gam[m][i][p].val() * gam[p][j][k].val() -
                 gam[m][j][p].val() * gam[p][i][k].val();
          up[m] = t;
        }
        for (int l = 0; l < 4; ++l) {
          double s = 0;
          for (int m = 0; m < 4; ++m) s += mj.g[l][m].val() * up[m];
          r4[i][j][k][l] = -s;
          r4[j][i][k][l] = s;
        }
      }
  double rf[4][4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                  s += E[i][a] * E[j][b] * E[k][c] * E[l][d] * r4[i][j][k][l];
          rf[a][b][c][d] = s;
        }
  return curv_from_r4([&](int i, int j, int k, int l) { return rf[i][j][k][l]; });
}

inline Mat4 sym_exp(const SymMat4& a, double t) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = a.m[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
  Eigen::Matrix4d e =
      es.eigenvectors() * (t * es.eigenvalues().array()).exp().matrix().asDiagonal() *
      es.eigenvectors().transpose();
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = e(i, j);
  return out;
}

inline Mat4 inv_sqrt(const Mat4& a) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = a[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
  Eigen::Matrix4d e = es.eigenvectors() *
                      es.eigenvalues().array().rsqrt().matrix().asDiagonal() *
                      es.eigenvectors().transpose();
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = e(i, j);
  return out;
}

}  // namespace flow_detail

struct FlowVariationResult {
  double evol_wplus_residual = 0;  // d/dt W+ vs ΔW+ + 2(W+)^2 + 4(W+)# + 2(CC^T - |C|^2/3)
  double evol_w2_residual = 0;     // (d/dt - Δ)|W+|^2 vs -2|∇W+|^2 + 36 det W+ + <Rc∘Rc,W+>
  double t_step = 0;
};

inline FlowVariationResult flow_variation_weyl_at(const ChartGeometry& chart, const Vec4& x,
                                                  double tau = 1e-4) {
  ChartPoint cp = chart_point_at(chart, x, ChartWant::SecondJets);
  MetricJets mj = metric_jets_at(chart, x);
  Jet rc_jet[4][4];
  flow_detail::ricci_jets(mj, rc_jet);

  auto wplus_at_t = [&](double t) {
    MetricJets mt = mj;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) mt.g[i][j] = mj.g[i][j] - (2.0 * t) * rc_jet[i][j];
    Mat4 E{};
    Mat4 ex = flow_detail::sym_exp(cp.pg.Rc, t);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        double s = 0;
        for (int p = 0; p < 4; ++p) s += cp.frame[r][p] * ex[p][c];
        E[r][c] = s;
      }
    Mat4 gt{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gt[i][j] = mt.g[i][j].val();
    Mat4 m{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) s += E[i][a] * gt[i][j] * E[j][b];
        m[a][b] = s;
      }
    Mat4 corr = flow_detail::inv_sqrt(m);
    Mat4 Eo{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        double s = 0;
        for (int p = 0; p < 4; ++p) s += E[r][p] * corr[p][c];
        Eo[r][c] = s;
      }
    CurvOp rt = flow_detail::curvature_in_frame(mt, Eo);
    CurvatureDecomposition d = decompose(rt, 1e-4);
    return hodge_block(d.W, +1, +1);
  };

  Mat3 wp_plus = wplus_at_t(tau), wp_minus = wplus_at_t(-tau);
  Mat3 dwdt{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) dwdt[a][b] = (wp_plus[a][b] - wp_minus[a][b]) / (2 * tau);

  Mat3 wp = hodge_block(cp.dec.W, +1, +1);
  Mat3 lap_wp = hodge_block(cp.lapW, +1, +1);
  Mat3 c = hodge_block(cp.pg.R, +1, -1);
  Mat3 ct{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) ct[a][b] = c[b][a];
  Mat3 cct = mat3_mul(c, ct);
  double cn = mat3_trace(cct);
  Mat3 rhs = lap_wp;
  Mat3 w2m = mat3_mul(wp, wp);
  Mat3 sharp = mat3_adjugate(wp);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      rhs[a][b] += 2 * w2m[a][b] + 4 * sharp[a][b] + 2 * (cct[a][b] - (a == b ? cn / 3 : 0.0));
    }
  FlowVariationResult out;
  out.t_step = tau;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      out.evol_wplus_residual = std::max(out.evol_wplus_residual, std::abs(dwdt[a][b] - rhs[a][b]));

  double dw2dt = (mat3_norm2(wp_plus) - mat3_norm2(wp_minus)) / (2 * tau);
  double gw2 = cp.grad_w2_plus();
  double lap_w2 = 2 * mat3_inner(wp, lap_wp) + 2 * gw2;
  double rhs2 = -2 * gw2 + 36 * mat3_det(wp) +
                inner(kulkarni_nomizu(cp.pg.Rc, cp.pg.Rc), pm_extension(cp.dec.W, +1));
  out.evol_w2_residual = std::abs(dw2dt - lap_w2 - rhs2);
  return out;
}

}  // namespace grs
