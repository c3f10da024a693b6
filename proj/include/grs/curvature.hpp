#pragma once

// Algebraic curvature operators on Lambda^2 in an orthonormal frame:
// Kulkarni-Nomizu products, the W/U/V decomposition, Hodge blocks, W±,
// norms and determinants, and the Gauss-Bonnet-Chern / signature integrands.
//
// Norm convention for (4,0) operators: |T|^2 = sum_{i<j,k<l} T_ijkl^2, the
// Frobenius norm of the 6x6 matrix (sum of eigenvalues squared).

#include <cmath>
#include <stdexcept>

#include "grs/lambda2.hpp"

namespace grs {

/// symmetric 4x4 bilinear form (metric, Ricci, Hessian, ...)
struct SymMat4 {
  double m[4][4] = {};

  static SymMat4 identity() {
    SymMat4 s;
    for (int i = 0; i < 4; ++i) s.m[i][i] = 1.0;
    return s;
  }
  static SymMat4 diag(double a, double b, double c, double d) {
    SymMat4 s;
    s.m[0][0] = a; s.m[1][1] = b; s.m[2][2] = c; s.m[3][3] = d;
    return s;
  }
  double trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }
  double norm2() const {
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += m[i][j] * m[i][j];
    return s;
  }
  Vec4 apply(const Vec4& x) const {
    Vec4 y{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) y[i] += m[i][j] * x[j];
    return y;
  }
  SymMat4& operator+=(const SymMat4& o) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
  SymMat4& operator-=(const SymMat4& o) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] -= o.m[i][j];
    return *this;
  }
  SymMat4& operator*=(double c) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] *= c;
    return *this;
  }
  friend SymMat4 operator+(SymMat4 a, const SymMat4& b) { return a += b; }
  friend SymMat4 operator-(SymMat4 a, const SymMat4& b) { return a -= b; }
  friend SymMat4 operator*(SymMat4 a, double c) { return a *= c; }
  friend SymMat4 operator*(double c, SymMat4 a) { return a *= c; }
};

/// symmetric endomorphism of Lambda^2 in the fixed basis; doubles as a
/// (4,0) tensor with curvature symmetries through r4()/set_r4-style access
struct CurvOp {
  double m[6][6] = {};

  static CurvOp identity() {
    CurvOp c;
    for (int k = 0; k < 6; ++k) c.m[k][k] = 1.0;
    return c;
  }
  /// (4,0) component T_{ijkl}; zero when i==j or k==l
  double r4(int i, int j, int k, int l) const {
    if (i == j || k == l) return 0.0;
    PairSlot a = pair_slot(i, j), b = pair_slot(k, l);
    return a.sign * b.sign * m[a.slot][b.slot];
  }
  double operator()(const Vec6& a, const Vec6& b) const {
    double s = 0;
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) s += a[p] * m[p][q] * b[q];
    return s;
  }
  Vec6 apply(const Vec6& a) const {
    Vec6 y{};
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) y[p] += m[p][q] * a[q];
    return y;
  }
  double trace() const {
    double s = 0;
    for (int k = 0; k < 6; ++k) s += m[k][k];
    return s;
  }
  double norm2() const {  // = sum_{i<j,k<l} T_ijkl^2
    double s = 0;
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) s += m[p][q] * m[p][q];
    return s;
  }
  CurvOp& operator+=(const CurvOp& o) {
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) m[p][q] += o.m[p][q];
    return *this;
  }
  CurvOp& operator-=(const CurvOp& o) {
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) m[p][q] -= o.m[p][q];
    return *this;
  }
  CurvOp& operator*=(double c) {
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) m[p][q] *= c;
    return *this;
  }
  friend CurvOp operator+(CurvOp a, const CurvOp& b) { return a += b; }
  friend CurvOp operator-(CurvOp a, const CurvOp& b) { return a -= b; }
  friend CurvOp operator*(CurvOp a, double c) { return a *= c; }
  friend CurvOp operator*(double c, CurvOp a) { return a *= c; }
};

/// operator pairing <A,B> = sum_{i<j,k<l} A_ijkl B_ijkl
inline double inner(const CurvOp& a, const CurvOp& b) {
  double s = 0;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) s += a.m[p][q] * b.m[p][q];
  return s;
}

/// build a CurvOp from a (4,0) component function (must have the symmetries)
template <class F>
inline CurvOp curv_from_r4(F&& f) {
  CurvOp c;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      c.m[p][q] = f(kPair[p][0], kPair[p][1], kPair[q][0], kPair[q][1]);
  return c;
}

/// Kulkarni-Nomizu product (A o B)_{ijkl} = A_ik B_jl + A_jl B_ik - A_il B_jk - A_jk B_il
inline CurvOp kulkarni_nomizu(const SymMat4& a, const SymMat4& b) {
  return curv_from_r4([&](int i, int j, int k, int l) {
    return a.m[i][k] * b.m[j][l] + a.m[j][l] * b.m[i][k] - a.m[i][l] * b.m[j][k] -
           a.m[j][k] * b.m[i][l];
  });
}

/// Ricci contraction Rc_jl = sum_i R_ijil
inline SymMat4 ricci_contraction(const CurvOp& r) {
  SymMat4 rc;
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      double s = 0;
      for (int i = 0; i < 4; ++i) s += r.r4(i, j, i, l);
      rc.m[j][l] = s;
    }
  return rc;
}

struct CurvatureDiagnostics {
  double symmetry_residual = 0;  // max |m[p][q]-m[q][p]|
  double bianchi_residual = 0;   // R_1234 + R_1342 + R_1423
};

/// pure report: symmetry and first-Bianchi residuals
inline CurvatureDiagnostics validate_curvature(const CurvOp& r) {
  CurvatureDiagnostics d;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      d.symmetry_residual = std::max(d.symmetry_residual, std::abs(r.m[p][q] - r.m[q][p]));
  d.bianchi_residual = r.r4(0, 1, 2, 3) + r.r4(0, 2, 3, 1) + r.r4(0, 3, 1, 2);
  return d;
}

struct CurvatureDecomposition {
  CurvOp W, U, V;
  SymMat4 Rc, E;
  double S = 0;
};

/// R = W + (S/24) g∘g + 1/2 E∘g in dimension four
inline CurvatureDecomposition decompose(const CurvOp& r, double tol = 1e-8) {
  CurvatureDiagnostics d = validate_curvature(r);
  double scale = std::sqrt(r.norm2());
  if (d.symmetry_residual > tol * std::max(1.0, scale) ||
      std::abs(d.bianchi_residual) > tol * std::max(1.0, scale))
    throw std::invalid_argument("decompose: input violates curvature symmetries");
  CurvatureDecomposition out;
  out.Rc = ricci_contraction(r);
  out.S = out.Rc.trace();
  out.E = out.Rc - (out.S / 4.0) * SymMat4::identity();
  out.U = (out.S / 24.0) * kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
  out.V = 0.5 * kulkarni_nomizu(out.E, SymMat4::identity());
  out.W = r - out.U - out.V;
  return out;
}

/// restriction of an operator to Lambda^2_± in the Hodge basis
inline Mat3 hodge_block(const CurvOp& r, int sign_row, int sign_col) {
  auto br = hodge_basis(sign_row), bc = hodge_basis(sign_col);
  Mat3 out{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[a][b] = r(br[a], bc[b]);
  return out;
}

inline double mat3_norm2(const Mat3& m) {
  double s = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += m[a][b] * m[a][b];
  return s;
}
inline double mat3_trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }
inline double mat3_det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}
inline Mat3 mat3_mul(const Mat3& x, const Mat3& y) {
  Mat3 z{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) z[a][b] += x[a][c] * y[c][b];
  return z;
}
inline double mat3_inner(const Mat3& x, const Mat3& y) {
  double s = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += x[a][b] * y[a][b];
  return s;
}
/// adjugate of a symmetric 3x3 (the sharp operator on Lambda^2_± blocks)
inline Mat3 mat3_adjugate(const Mat3& m) {
  Mat3 m2 = mat3_mul(m, m);
  double t = mat3_trace(m), t2 = mat3_trace(m2);
  Mat3 out{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      out[a][b] = m2[a][b] - t * m[a][b];
      if (a == b) out[a][b] += 0.5 * (t * t - t2);
    }
  return out;
}

struct WeylBlockResult {
  Mat3 block;
  double c_block_norm = 0;  // diagnostic; nonzero means input was not Weyl-like
};

/// W restricted to Lambda^2_± in the Hodge basis. Warns (via c_block_norm)
/// if the mixed block is not negligible.
inline WeylBlockResult weyl_pm(const CurvOp& w, int sign) {
  WeylBlockResult r;
  r.block = hodge_block(w, sign, sign);
  r.c_block_norm = std::sqrt(mat3_norm2(hodge_block(w, +1, -1)));
  return r;
}

inline double det_wpm(const CurvOp& w, int sign) { return mat3_det(weyl_pm(w, sign).block); }

/// extension of W± by zero on the opposite dual part, P± W P±
inline CurvOp pm_extension(const CurvOp& w, int sign) {
  CurvOp out;
  auto proj = [&](const Vec6& v) { return project_pm(v, sign); };
  for (int p = 0; p < 6; ++p) {
    Vec6 col = proj(w.apply(proj(basis6(p))));
    for (int q = 0; q < 6; ++q) out.m[q][p] = col[q];
  }
  return out;
}

/// |W|^2 - 1/2|E|^2 + S^2/24  (8 pi^2 chi integrand)
inline double gauss_bonnet_integrand(const CurvOp& r) {
  CurvatureDecomposition d = decompose(r);
  return d.W.norm2() - 0.5 * d.E.norm2() + d.S * d.S / 24.0;
}

/// |W+|^2 - |W-|^2  (12 pi^2 tau integrand)
inline double signature_integrand(const CurvOp& r) {
  CurvatureDecomposition d = decompose(r);
  return mat3_norm2(weyl_pm(d.W, +1).block) - mat3_norm2(weyl_pm(d.W, -1).block);
}

/// pointwise Hitchin-Thorpe check |sig| <= gb for Einstein data
inline bool hitchin_thorpe_check(const CurvOp& r, double einstein_tol = 1e-8) {
  CurvatureDecomposition d = decompose(r);
  if (std::sqrt(d.E.norm2()) > einstein_tol * std::max(1.0, std::abs(d.S)))
    throw std::invalid_argument("hitchin_thorpe_check: input is not Einstein");
  return std::abs(signature_integrand(r)) <= gauss_bonnet_integrand(r) + 1e-12;
}

}  // namespace grs
