#pragma once

// Conformal-change verification: builds the chart of u^2 g and checks the
// transformation laws of W, S, Rc, the Weyl divergence, |∇W|^2 and the
// Bochner-Weitzenboeck combination against the base chart.
//
// Coefficient note: the |∇̃W̃|^2 and u^6 h̃ expansions below were re-derived
// and verified numerically; under the Σ_{i<j,k<l} norm convention used
// throughout, the correct coefficient sets are (10, -4, +8) and
// (-8, +2, +2, -16).

#include "grs/chart.hpp"

namespace grs {

struct ScalarField {
  std::function<Jet(const JetVec4&)> jet_eval;
  std::function<double(const Vec4&)> val_eval;
};

template <class F>
inline ScalarField make_scalar_field(F f) {
  ScalarField s;
  s.jet_eval = [f](const JetVec4& x) { return f(x); };
  s.val_eval = [f](const Vec4& x) {
    std::array<double, 4> xx = x;
    return f(xx);
  };
  return s;
}

/// the chart of g~ = u^2 g (u > 0 on the domain), same policy and domain
inline ChartGeometry conformal_transform(const ChartGeometry& base, const ScalarField& u) {
  ChartGeometry c = base;
  c.name = base.name + "_conformal";
  c.soliton = false;
  c.lambda = 0;
  auto base_jet = base.jet_eval;
  auto base_val = base.val_eval;
  c.jet_eval = [base_jet, u](const JetVec4& x, MetricJets& out) {
    base_jet(x, out);
    Jet uu = u.jet_eval(x);
    if (uu.val() <= 0) throw std::invalid_argument("conformal factor must be positive");
    Jet u2 = uu * uu;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.g[i][j] = out.g[i][j] * u2;
  };
  c.val_eval = [base_val, u](const Vec4& x, Mat4& g, double& f) {
    base_val(x, g, f);
    double uu = u.val_eval(x);
    if (uu <= 0) throw std::invalid_argument("conformal factor must be positive");
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] *= uu * uu;
  };
  return c;
}

struct ConformalResiduals {
  double weyl = 0;        // W~ (frame) vs u^-2 W (frame)
  double det_wplus = 0;   // det W~+ vs u^-6 det W+
  double scalar = 0;      // S~ vs u^-3 (-6 lap + S) u
  double ricci = 0;       // Rc~ vs Rc - (n-2)a - (lap phi + (n-2)/2 |dphi|^2) g
  double div_weyl = 0;    // divergence law with the (n-3) W(∇u/u, ...) term
  double grad_weyl = 0;   // |∇~W~|^2 expansion
  double bochner = 0;     // u^6 h~ expansion
  double max() const {
    return std::max({weyl, det_wplus, scalar, ricci, div_weyl, grad_weyl, bochner});
  }
};

namespace conformal_detail {

struct ScalarJets {
  double val = 0;
  Vec4 grad_frame{};   // frame components of du
  double lap = 0;      // metric Laplacian
  SymMat4 hess_frame;  // covariant Hessian, frame
};

inline ScalarJets scalar_jets(const MetricJets& mj, const Jet& s, const Mat4& B) {
  Jet Ginv[4][4];
  chart_detail::invert_jet_matrix(mj.g, Ginv);
  ScalarJets out;
  out.val = s.val();
  double hess[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      double t = s.d(i, j);
      for (int p = 0; p < 4; ++p) {
        double gam = 0;
        for (int b = 0; b < 4; ++b)
          gam += 0.5 * Ginv[p][b].val() *
                 (mj.g[j][b].partial(i).val() + mj.g[i][b].partial(j).val() -
                  mj.g[i][j].partial(b).val());
        t -= gam * s.d(p);
      }
      hess[i][j] = t;
      hess[j][i] = t;
    }
  for (int a = 0; a < 4; ++a) {
    double gf = 0;
    for (int p = 0; p < 4; ++p) gf += B[p][a] * s.d(p);
    out.grad_frame[a] = gf;
    for (int b = 0; b < 4; ++b) {
      double hf = 0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) hf += B[p][a] * B[q][b] * hess[p][q];
      out.hess_frame.m[a][b] = hf;
    }
  }
  for (int m = 0; m < 4; ++m)
    for (int nn = 0; nn < 4; ++nn) out.lap += Ginv[m][nn].val() * hess[m][nn];
  return out;
}

}  // namespace conformal_detail

inline ConformalResiduals conformal_residuals(const ChartGeometry& base, const ScalarField& u,
                                              const Vec4& x) {
  const int n = 4;
  ChartGeometry conf = conformal_transform(base, u);
  ChartPoint cb = chart_point_at(base, x, ChartWant::SecondJets);
  ChartPoint cc = chart_point_at(conf, x, ChartWant::SecondJets);
  MetricJets mj = metric_jets_at(base, x);
  Jet uj = u.jet_eval(seed_jets(x));
  auto us = conformal_detail::scalar_jets(mj, uj, cb.frame);
  const double uv = us.val;

  ConformalResiduals r;
  // W~ = u^2 W as (4,0) coordinate tensors  <=>  u^-2 W in orthonormal frames
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      r.weyl = std::max(r.weyl,
                        std::abs(cc.dec.W.m[p][q] - cb.dec.W.m[p][q] / (uv * uv)));
  r.det_wplus = std::abs(mat3_det(hodge_block(cc.dec.W, +1, +1)) -
                         mat3_det(hodge_block(cb.dec.W, +1, +1)) / std::pow(uv, 6));
  r.scalar = std::abs(cc.pg.S - std::pow(uv, -3) * (-6.0 * us.lap + cb.pg.S * uv));

  // Rc~ = Rc - (n-2) a - (lap phi + (n-2)/2 |dphi|^2) g, phi = ln u
  {
    Jet phij = uj.log();
    auto ph = conformal_detail::scalar_jets(mj, phij, cb.frame);
    double dphi2 = dot(ph.grad_frame, ph.grad_frame);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double av = ph.hess_frame.m[a][b] - ph.grad_frame[a] * ph.grad_frame[b] +
                    ((a == b) ? 0.5 * dphi2 : 0.0);
        double rhs = cb.pg.Rc.m[a][b] - (n - 2) * av -
                     ((a == b) ? (ph.lap + 0.5 * (n - 2) * dphi2) : 0.0);
        r.ricci = std::max(r.ricci, std::abs(uv * uv * cc.pg.Rc.m[a][b] - rhs));
      }
  }

  // divergence law: dW~ (conformal frame) = u^-3 [ dW + (n-3)/u * i_grad_u W ]
  {
    FrameworkTensor lhs = fw_divergence(cc.gradW);
    FrameworkTensor rhs = fw_divergence(cb.gradW) +
                          ((n - 3.0) / uv) * fw_interior(cb.dec.W, us.grad_frame);
    r.div_weyl = (lhs - (1.0 / (uv * uv * uv)) * rhs).max_abs();
  }

  // |∇~W~|^2 = u^-6 |∇W|^2 + 10 u^-8 |∇u|^2 |W|^2 - 4 u^-7 <∇u, ∇|W|^2>
  //            + 8 u^-7 <δW, i_∇u W>
  {
    double lhs = cc.grad_w2_full();
    double w2 = cb.dec.W.norm2();
    double u2g = dot(us.grad_frame, us.grad_frame);
    double gu = dot(us.grad_frame, cb.grad_normsq_w(0));
    double di = pairing(fw_divergence(cb.gradW), fw_interior(cb.dec.W, us.grad_frame));
    double rhs = std::pow(uv, -6) * cb.grad_w2_full() + 10.0 * std::pow(uv, -8) * u2g * w2 -
                 4.0 * std::pow(uv, -7) * gu + 8.0 * std::pow(uv, -7) * di;
    r.grad_weyl = std::abs(lhs - rhs);
  }

  // u^6 h~ = h - 8 u^-2 |∇u|^2 |W+|^2 + 2 u^-1 Δu |W+|^2 + 2 u^-1 <∇u, ∇|W+|^2>
  //          - 16 u^-1 <δW+, i_∇u W+>
  {
    auto hval = [](const ChartPoint& cp) {
      Mat3 wp = hodge_block(cp.dec.W, +1, +1);
      Mat3 lwp = hodge_block(cp.lapW, +1, +1);
      return 2.0 * mat3_inner(wp, lwp) - cp.pg.S * mat3_norm2(wp) + 36.0 * mat3_det(wp);
    };
    double h = hval(cb), ht = hval(cc);
    Mat3 wp = hodge_block(cb.dec.W, +1, +1);
    double w2p = mat3_norm2(wp);
    double u2g = dot(us.grad_frame, us.grad_frame);
    double gup = dot(us.grad_frame, cb.grad_normsq_w(+1));
    std::array<CurvOp, 4> gradWp;
    for (int e = 0; e < 4; ++e) gradWp[e] = pm_extension(cb.gradW[e], +1);
    CurvOp wp_ext = pm_extension(cb.dec.W, +1);
    double dip = pairing(fw_divergence(gradWp), fw_interior(wp_ext, us.grad_frame));
    double rhs = h - 8.0 / (uv * uv) * u2g * w2p + 2.0 / uv * us.lap * w2p + 2.0 / uv * gup -
                 16.0 / uv * dip;
    r.bochner = std::abs(std::pow(uv, 6) * ht - rhs);
  }
  return r;
}

}  // namespace grs
