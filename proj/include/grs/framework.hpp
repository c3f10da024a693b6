#pragma once

// The framework tensors P, Q, M, N, C, D on Lambda^2 ⊗ TM, the interior and
// divergence representations of the curvature components, the pointwise
// pairing table, the orthogonality relations, and the Bochner-Weitzenboeck
// right-hand sides.
//
// A FrameworkTensor stores T(alpha, Z) on the 6x4 grid (rows = fixed Lambda^2
// basis, columns = frame vectors). The grid sum Σ T T' equals the Σ_{i<j;k}
// component pairing; identities stated with an explicit factor 2 are tested
// with that factor. Interior products of (4,0) tensors are stored as
// (alpha, Z) -> T(alpha, Z ∧ gradf) = T_{ijkp} gradf^p, so the identities of
// the interaction lemma and D = C + i_gradf W hold verbatim.

#include "grs/soliton.hpp"

namespace grs {

struct FrameworkTensor {
  double t[6][4] = {};

  double& operator()(int s, int k) { return t[s][k]; }
  double operator()(int s, int k) const { return t[s][k]; }
  double operator()(const Vec6& alpha, const Vec4& z) const {
    double s = 0;
    for (int p = 0; p < 6; ++p)
      for (int k = 0; k < 4; ++k) s += alpha[p] * t[p][k] * z[k];
    return s;
  }
  double norm2() const {
    double s = 0;
    for (int p = 0; p < 6; ++p)
      for (int k = 0; k < 4; ++k) s += t[p][k] * t[p][k];
    return s;
  }
  double max_abs() const {
    double w = 0;
    for (int p = 0; p < 6; ++p)
      for (int k = 0; k < 4; ++k) w = std::max(w, std::abs(t[p][k]));
    return w;
  }
  FrameworkTensor& operator+=(const FrameworkTensor& o) {
    for (int p = 0; p < 6; ++p)
      for (int k = 0; k < 4; ++k) t[p][k] += o.t[p][k];
    return *this;
  }
  FrameworkTensor& operator-=(const FrameworkTensor& o) {
    for (int p = 0; p < 6; ++p)
      for (int k = 0; k < 4; ++k) t[p][k] -= o.t[p][k];
    return *this;
  }
  FrameworkTensor& operator*=(double c) {
    for (int p = 0; p < 6; ++p)
      for (int k = 0; k < 4; ++k) t[p][k] *= c;
    return *this;
  }
  friend FrameworkTensor operator+(FrameworkTensor a, const FrameworkTensor& b) { return a += b; }
  friend FrameworkTensor operator-(FrameworkTensor a, const FrameworkTensor& b) { return a -= b; }
  friend FrameworkTensor operator*(FrameworkTensor a, double c) { return a *= c; }
  friend FrameworkTensor operator*(double c, FrameworkTensor a) { return a *= c; }
};

/// grid pairing, Σ_{i<j;k} T_{ijk} T'_{ijk}
inline double pairing(const FrameworkTensor& a, const FrameworkTensor& b) {
  double s = 0;
  for (int p = 0; p < 6; ++p)
    for (int k = 0; k < 4; ++k) s += a.t[p][k] * b.t[p][k];
  return s;
}

/// 3x4 restriction of T to Lambda^2_± (rows = orthonormal Hodge basis)
inline std::array<Vec4, 3> restrict_pm(const FrameworkTensor& T, int sign) {
  auto B = hodge_basis(sign);
  std::array<Vec4, 3> out{};
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 4; ++k) {
      double s = 0;
      for (int p = 0; p < 6; ++p) s += B[a][p] * T.t[p][k];
      out[a][k] = s;
    }
  return out;
}

inline double pairing_pm(const FrameworkTensor& a, const FrameworkTensor& b, int sign) {
  auto ra = restrict_pm(a, sign), rb = restrict_pm(b, sign);
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 4; ++k) s += ra[i][k] * rb[i][k];
  return s;
}

inline double norm2_pm(const FrameworkTensor& a, int sign) { return pairing_pm(a, a, sign); }

/// interior product of a (4,0) operator: (alpha,Z) -> T(alpha, Z ∧ v)
inline FrameworkTensor fw_interior(const CurvOp& T, const Vec4& v) {
  FrameworkTensor out;
  for (int s = 0; s < 6; ++s) {
    Vec6 row = T.apply(basis6(s));
    for (int k = 0; k < 4; ++k) out.t[s][k] = dot(row, wedge(basis4(k), v));
  }
  return out;
}

/// divergence representation of a (4,0) field with per-direction jets:
/// dT(alpha,Z) = Σ_p (∇_p T)_{i j Z p}
inline FrameworkTensor fw_divergence(const std::array<CurvOp, 4>& gradT) {
  FrameworkTensor out;
  for (int s = 0; s < 6; ++s) {
    const int i = kPair[s][0], j = kPair[s][1];
    for (int k = 0; k < 4; ++k) {
      double v = 0;
      for (int p = 0; p < 4; ++p) v += gradT[p].r4(i, j, k, p);
      out.t[s][k] = v;
    }
  }
  return out;
}

struct FrameworkTensors {
  FrameworkTensor P, Q, M, N, C, D;
  // cross-check when jets are present: the ∇Rc form of P
  bool has_p_jet = false;
  FrameworkTensor P_jet;
  double p_form_residual = 0;  // max |P - P_jet|
};

/// the fundamental tensors; P is built algebraically as P(alpha,Z) = R(alpha, gradf ∧ Z)
inline FrameworkTensors framework_tensors(const PointGeometry& pg, double tol = 1e-8) {
  require_soliton(pg, tol);
  const int n = pg.n;
  FrameworkTensors fw;
  auto prow = p_tensor_rows(pg.R, pg.gradf);
  Vec4 rgf = pg.Rc.apply(pg.gradf);
  for (int s = 0; s < 6; ++s) {
    for (int k = 0; k < 4; ++k) {
      Vec4 az = act(basis6(s), basis4(k));
      fw.P.t[s][k] = prow[s][k];
      fw.Q.t[s][k] = -2.0 * dot(az, rgf);
      fw.M.t[s][k] = -dot(act(basis6(s), pg.gradf), pg.Rc.apply(basis4(k)));
      fw.N.t[s][k] = dot(az, pg.gradf);
    }
  }
  fw.C = fw.P + (1.0 / (2.0 * (n - 1))) * fw.Q;
  fw.D = (-1.0 / (2.0 * (n - 1) * (n - 2))) * fw.Q + (1.0 / (n - 2)) * fw.M +
         (-pg.S / ((n - 1) * (n - 2))) * fw.N;
  if (pg.has_jets) {
    fw.has_p_jet = true;
    for (int s = 0; s < 6; ++s) {
      const int i = kPair[s][0], j = kPair[s][1];
      for (int k = 0; k < 4; ++k)
        fw.P_jet.t[s][k] = pg.gradRc[i].m[j][k] - pg.gradRc[j].m[i][k];
    }
    fw.p_form_residual = (fw.P - fw.P_jet).max_abs();
  }
  return fw;
}

struct InteriorWeylResult {
  FrameworkTensor i_gradf_W;
  double weyl_residual = 0;    // i_gradf W vs -P - Q/(2(n-2)) + M/(n-2) - S N/((n-1)(n-2))
  double gg_residual = 0;      // i_gradf (g∘g) vs -2N
  double rcg_residual = 0;     // i_gradf (Rc∘g) vs Q/2 - M
  double h_residual = 0;       // i_gradf H vs M - Q/2 - 2 lambda N
};

/// interior products of the curvature components against grad f
inline InteriorWeylResult interior_weyl(const PointGeometry& pg, double tol = 1e-8) {
  FrameworkTensors fw = framework_tensors(pg, tol);
  const int n = pg.n;
  const CurvOp gg = kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
  const CurvOp rcg = kulkarni_nomizu(pg.Rc, SymMat4::identity());
  const CurvOp h = kulkarni_nomizu(pg.hessf, SymMat4::identity());
  const CurvOp w = decompose(pg.R).W;
  InteriorWeylResult out;
  out.i_gradf_W = fw_interior(w, pg.gradf);
  FrameworkTensor rhs = -1.0 * fw.P - (1.0 / (2.0 * (n - 2))) * fw.Q +
                        (1.0 / (n - 2)) * fw.M - (pg.S / ((n - 1.0) * (n - 2))) * fw.N;
  out.weyl_residual = (out.i_gradf_W - rhs).max_abs();
  out.gg_residual = (fw_interior(gg, pg.gradf) + 2.0 * fw.N).max_abs();
  out.rcg_residual = (fw_interior(rcg, pg.gradf) - (0.5 * fw.Q - fw.M)).max_abs();
  out.h_residual =
      (fw_interior(h, pg.gradf) - (fw.M - 0.5 * fw.Q - 2.0 * pg.lambda * fw.N)).max_abs();
  return out;
}

struct DivergenceResiduals {
  double riemann = 0;   // dR vs -P
  double s_gg = 0;      // d(S g∘g) vs 2Q
  double ricci_g = 0;   // d(Rc∘g) vs -P + Q/2   (= -dH)
  double weyl = 0;      // dW vs -((n-3)/(n-2)) C
  double div_free_f = 0;  // δF for F = W + (n-3)/(n-2) H + n(n-3)S/(4(n-1)(n-2)) g∘g
};

/// divergences of the curvature components from the first-order jets
inline DivergenceResiduals divergence_representation_residuals(const PointGeometry& pg,
                                                               double tol = 1e-8) {
  if (!pg.has_jets || !pg.has_gradR)
    throw std::invalid_argument("divergence residuals need gradRc and gradR jets");
  FrameworkTensors fw = framework_tensors(pg, tol);
  const int n = pg.n;
  const SymMat4 g = SymMat4::identity();
  DivergenceResiduals out;
  out.riemann = (fw_divergence(pg.gradR) + fw.P).max_abs();

  std::array<CurvOp, 4> grad_sgg, grad_rcg, grad_w, grad_h, grad_f;
  const CurvOp gg = kulkarni_nomizu(g, g);
  for (int m = 0; m < 4; ++m) {
    grad_sgg[m] = pg.gradS[m] * gg;
    grad_rcg[m] = kulkarni_nomizu(pg.gradRc[m], g);
    SymMat4 gradE = pg.gradRc[m] - (pg.gradS[m] / 4.0) * g;
    grad_w[m] = pg.gradR[m] - (pg.gradS[m] / 24.0) * gg - 0.5 * kulkarni_nomizu(gradE, g);
    // soliton: nabla Hessf = -nabla Rc
    grad_h[m] = kulkarni_nomizu(-1.0 * pg.gradRc[m], g);
    grad_f[m] = grad_w[m] + ((n - 3.0) / (n - 2.0)) * grad_h[m] +
                (n * (n - 3.0) / (4.0 * (n - 1) * (n - 2))) * pg.gradS[m] * gg;
  }
  out.s_gg = (fw_divergence(grad_sgg) - 2.0 * fw.Q).max_abs();
  out.ricci_g = (fw_divergence(grad_rcg) - (-1.0 * fw.P + 0.5 * fw.Q)).max_abs();
  out.weyl = (fw_divergence(grad_w) + ((n - 3.0) / (n - 2.0)) * fw.C).max_abs();
  out.div_free_f = fw_divergence(grad_f).max_abs();
  return out;
}

struct PairingTableResiduals {
  // the pointwise pairing table, each row as |LHS - RHS|
  double pq = 0;   // 2<P,Q> = -|dS|^2
  double pn = 0;   // 2<P,N> = <df,dS>
  double qq = 0;   // 2<Q,Q> = 2(n-1)|dS|^2
  double mm = 0;   // 2<M,M> = 2|Rc|^2|df|^2 - |dS|^2/2
  double nn = 0;   // 2<N,N> = 2(n-1)|df|^2
  double qm = 0;   // 2<Q,M> = |dS|^2 - 2S<df,dS>
  double qn = 0;   // 2<Q,N> = -2(n-1)<df,dS>
  double mn = 0;   // 2<M,N> = 2S|df|^2 - <df,dS>
  bool integral_rows_skipped = true;  // the two closed-manifold rows are out of scope
  double max() const {
    double w = std::max({pq, pn, qq, mm});
    return std::max(w, std::max({nn, qm, qn, mn}));
  }
};

inline PairingTableResiduals pairing_table_residuals(const PointGeometry& pg, double tol = 1e-8) {
  FrameworkTensors fw = framework_tensors(pg, tol);
  const int n = pg.n;
  const double df2 = dot(pg.gradf, pg.gradf);
  Vec4 gS = pg.has_jets ? pg.gradS : [&] {
    Vec4 v = pg.Rc.apply(pg.gradf);
    for (auto& x : v) x *= 2.0;
    return v;
  }();
  const double dS2 = dot(gS, gS);
  const double fS = dot(pg.gradf, gS);
  const double rc2 = pg.Rc.norm2();
  PairingTableResiduals r;
  r.pq = std::abs(2 * pairing(fw.P, fw.Q) + dS2);
  r.pn = std::abs(2 * pairing(fw.P, fw.N) - fS);
  r.qq = std::abs(2 * pairing(fw.Q, fw.Q) - 2 * (n - 1) * dS2);
  r.mm = std::abs(2 * pairing(fw.M, fw.M) - (2 * rc2 * df2 - 0.5 * dS2));
  r.nn = std::abs(2 * pairing(fw.N, fw.N) - 2 * (n - 1) * df2);
  r.qm = std::abs(2 * pairing(fw.Q, fw.M) - (dS2 - 2 * pg.S * fS));
  r.qn = std::abs(2 * pairing(fw.Q, fw.N) + 2 * (n - 1) * fS);
  r.mn = std::abs(2 * pairing(fw.M, fw.N) - (2 * pg.S * df2 - fS));
  return r;
}

struct OrthogonalityResiduals {
  // orthogonality of Q, N against i_gradf W and the divergence of W
  double q_iw = 0, n_iw = 0, q_dw = 0, n_dw = 0;
  double q_iw_p = 0, n_iw_p = 0, q_dw_p = 0, n_dw_p = 0;
  double q_iw_m = 0, n_iw_m = 0, q_dw_m = 0, n_dw_m = 0;
  // self-dual restriction values, in the norm-1 Hodge-basis grid convention
  double pplus_qplus = 0;  // <P+,Q+> + |dS|^2/4
  double qplus_qplus = 0;  // <Q+,Q+> - (3/2)|dS|^2
  // the Cotton-norm integrand identity
  double cotton_norm = 0;  // 2|dW|^2 - ((n-3)/(n-2))^2 2<P + Q/(2(n-1)), P>
  double max() const {
    double w = std::max({q_iw, n_iw, q_dw, n_dw, q_iw_p, n_iw_p});
    w = std::max(w, std::max({q_dw_p, n_dw_p, q_iw_m, n_iw_m, q_dw_m, n_dw_m}));
    return std::max(w, std::max({pplus_qplus, qplus_qplus, cotton_norm}));
  }
};

inline OrthogonalityResiduals orthogonality_residuals(const PointGeometry& pg, double tol = 1e-8) {
  FrameworkTensors fw = framework_tensors(pg, tol);
  const int n = pg.n;
  const CurvOp w = decompose(pg.R).W;
  FrameworkTensor iw = fw_interior(w, pg.gradf);
  FrameworkTensor dw = ((n - 3.0) / (n - 2.0)) * fw.C;  // divergence representation of W
  Vec4 gS = pg.Rc.apply(pg.gradf);
  for (auto& x : gS) x *= 2.0;
  const double dS2 = dot(gS, gS);
  OrthogonalityResiduals r;
  r.q_iw = std::abs(pairing(fw.Q, iw));
  r.n_iw = std::abs(pairing(fw.N, iw));
  r.q_dw = std::abs(pairing(fw.Q, dw));
  r.n_dw = std::abs(pairing(fw.N, dw));
  // ± versions pair the restricted tensors with the restricted i/d of W±
  CurvOp wp = pm_extension(w, +1), wm = pm_extension(w, -1);
  FrameworkTensor iwp = fw_interior(wp, pg.gradf), iwm = fw_interior(wm, pg.gradf);
  r.q_iw_p = std::abs(pairing_pm(fw.Q, iwp, +1));
  r.n_iw_p = std::abs(pairing_pm(fw.N, iwp, +1));
  r.q_dw_p = std::abs(pairing_pm(fw.Q, dw, +1));
  r.n_dw_p = std::abs(pairing_pm(fw.N, dw, +1));
  r.q_iw_m = std::abs(pairing_pm(fw.Q, iwm, -1));
  r.n_iw_m = std::abs(pairing_pm(fw.N, iwm, -1));
  r.q_dw_m = std::abs(pairing_pm(fw.Q, dw, -1));
  r.n_dw_m = std::abs(pairing_pm(fw.N, dw, -1));
  r.pplus_qplus = std::abs(pairing_pm(fw.P, fw.Q, +1) + 0.25 * dS2);
  r.qplus_qplus = std::abs(pairing_pm(fw.Q, fw.Q, +1) - 1.5 * dS2);
  double c = (n - 3.0) / (n - 2.0);
  r.cotton_norm = std::abs(2 * pairing(dw, dw) -
                    c * c * 2 * pairing(fw.P + (1.0 / (2.0 * (n - 1))) * fw.Q, fw.P));
  return r;
}

struct BochnerRhs {
  double via_ricci = 0;    // 2|∇W+|^2 + 4λ|W+|^2 - 36 det W+ - <Rc∘Rc, W+>
  double via_hessian = 0;  // same with Hess f ∘ Hess f
  double agreement = 0;    // |via_ricci - via_hessian|
};

/// both right-hand sides of the Bochner-Weitzenboeck formula for Δ_f |W+|^2
inline BochnerRhs bochner_rhs(const PointGeometry& pg, double grad_w_norm_sq,
                              double tol = 1e-8) {
  require_soliton(pg, tol);
  CurvatureDecomposition d = decompose(pg.R);
  Mat3 wp = weyl_pm(d.W, +1).block;
  CurvOp wp_ext = pm_extension(d.W, +1);
  const double w2 = mat3_norm2(wp), det = mat3_det(wp);
  BochnerRhs out;
  out.via_ricci = 2 * grad_w_norm_sq + 4 * pg.lambda * w2 - 36 * det -
                  inner(kulkarni_nomizu(pg.Rc, pg.Rc), wp_ext);
  out.via_hessian = 2 * grad_w_norm_sq + 4 * pg.lambda * w2 - 36 * det -
                    inner(kulkarni_nomizu(pg.hessf, pg.hessf), wp_ext);
  out.agreement = std::abs(out.via_ricci - out.via_hessian);
  return out;
}

/// full right-hand side of the Δ_f W formula in a local frame, with the
/// quadratic term C_ijkl = W_pijr W_rlkp evaluated by brute-force contraction
inline CurvOp delta_f_weyl_rhs(const PointGeometry& pg, double tol = 1e-8) {
  require_soliton(pg, tol);
  const int n = pg.n;
  CurvatureDecomposition d = decompose(pg.R);
  double w4[4][4][4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) w4[i][j][k][l] = d.W.r4(i, j, k, l);
  double c4[4][4][4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = 0;
          for (int p = 0; p < 4; ++p)
            for (int r = 0; r < 4; ++r) s += w4[p][i][j][r] * w4[r][l][k][p];
          c4[i][j][k][l] = s;
        }
  const SymMat4& rc = pg.Rc;
  SymMat4 rc2;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int p = 0; p < 4; ++p) s += rc.m[i][p] * rc.m[p][j];
      rc2.m[i][j] = s;
    }
  const double rcn2 = rc.norm2(), S = pg.S, lam = pg.lambda;
  const double c1 = 2.0 / ((n - 2.0) * (n - 2.0));
  const double c2 = 2.0 * S / ((n - 2.0) * (n - 2.0));
  const double c3 = 2.0 / (n - 2.0);
  const double c4f = 2.0 * (S * S - rcn2) / ((n - 1.0) * (n - 2.0) * (n - 2.0));
  auto kro = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  return curv_from_r4([&](int i, int j, int k, int l) {
    double ccomb = c4[i][j][k][l] - c4[i][j][l][k] + c4[i][k][j][l] - c4[i][l][j][k];
    double t2 = rc2.m[i][k] * kro(j, l) - rc2.m[i][l] * kro(j, k) + rc2.m[j][l] * kro(i, k) -
                rc2.m[j][k] * kro(i, l);
    double t3 = rc.m[i][k] * kro(j, l) - rc.m[i][l] * kro(j, k) + rc.m[j][l] * kro(i, k) -
                rc.m[j][k] * kro(i, l);
    double t4 = rc.m[i][k] * rc.m[j][l] - rc.m[j][k] * rc.m[i][l];
    double t5 = kro(i, k) * kro(j, l) - kro(i, l) * kro(j, k);
    return 2 * lam * w4[i][j][k][l] - 2 * ccomb - c1 * t2 + c2 * t3 - c3 * t4 - c4f * t5;
  });
}

}  // namespace grs
