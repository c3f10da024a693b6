#pragma once

// Berger normal form: an orthonormal frame in which a Weyl-type operator
// (vanishing Hodge C-block) takes the form [[A,B],[B,A]] with A = diag(a),
// B = diag(b) in the fixed Lambda^2 basis order.
//
// Construction: eigendecompose the W± Hodge blocks, orient each eigenbasis
// (ascending eigenvalues, first nonzero component of each column positive,
// det fixed to +1 by flipping the third column), then lift the pair of SO(3)
// rotations to SO(4) through the unit-quaternion double cover: x -> q x r̄
// rotates Lambda^+ by rot3(q) and Lambda^- by rot3(r) in the Hodge bases.

#include <Eigen/Dense>
#include <stdexcept>

#include "grs/curvature.hpp"

namespace grs {

struct NormalForm {
  Mat4 frame;  // columns are the new orthonormal frame vectors
  Vec3 a{}, b{};
};

namespace detail {

using Quat = std::array<double, 4>;  // (w,x,y,z)

inline Quat quat_mul(const Quat& q, const Quat& p) {
  return {q[0] * p[0] - q[1] * p[1] - q[2] * p[2] - q[3] * p[3],
          q[0] * p[1] + q[1] * p[0] + q[2] * p[3] - q[3] * p[2],
          q[0] * p[2] + q[2] * p[0] + q[3] * p[1] - q[1] * p[3],
          q[0] * p[3] + q[3] * p[0] + q[1] * p[2] - q[2] * p[1]};
}

inline Quat quat_from_rot3(const Mat3& v) {
  double t = mat3_trace(v);
  if (t > -0.5) {
    double w = std::sqrt(std::max(0.0, 1.0 + t)) / 2.0;
    return {w, (v[2][1] - v[1][2]) / (4 * w), (v[0][2] - v[2][0]) / (4 * w),
            (v[1][0] - v[0][1]) / (4 * w)};
  }
  int i = 0;
  if (v[1][1] > v[i][i]) i = 1;
  if (v[2][2] > v[i][i]) i = 2;
  int j = (i + 1) % 3, k = (i + 2) % 3;
  double s = std::sqrt(std::max(0.0, 1.0 + v[i][i] - v[j][j] - v[k][k]));
  Quat q{};
  q[0] = (v[k][j] - v[j][k]) / (2 * s);
  q[1 + i] = s / 2;
  q[1 + j] = (v[j][i] + v[i][j]) / (2 * s);
  q[1 + k] = (v[k][i] + v[i][k]) / (2 * s);
  return q;
}

/// R(x) = q * x * conj(r) on H ~ R^4 with e1=1, e2=i, e3=j, e4=k
inline Mat4 rotation_from_quat_pair(const Quat& q, const Quat& r) {
  Quat rc = {r[0], -r[1], -r[2], -r[3]};
  Mat4 R{};
  for (int c = 0; c < 4; ++c) {
    Quat x{};
    x[c] = 1.0;
    Quat y = quat_mul(quat_mul(q, x), rc);
    for (int rr = 0; rr < 4; ++rr) R[rr][c] = y[rr];
  }
  return R;
}

/// deterministic eigenbasis of a symmetric 3x3: ascending eigenvalues,
/// column sign normalized, det +1
inline void oriented_eigh(const Mat3& m, Mat3& vecs, Vec3& vals) {
  Eigen::Matrix3d em;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) em(i, j) = m[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(em);
  Eigen::Matrix3d v = es.eigenvectors();
  for (int c = 0; c < 3; ++c) {
    int nz = 0;
    while (nz < 2 && std::abs(v(nz, c)) <= 1e-9) ++nz;
    if (v(nz, c) < 0) v.col(c) = -v.col(c);
  }
  if (v.determinant() < 0) v.col(2) = -v.col(2);
  for (int i = 0; i < 3; ++i) {
    vals[i] = es.eigenvalues()(i);
    for (int j = 0; j < 3; ++j) vecs[i][j] = v(i, j);
  }
}

}  // namespace detail

/// Normal form of an operator with vanishing C-block (Weyl operators, Rbar).
/// Eigendata are taken ascending in each of the ± blocks, so for Rbar input
/// a1 <= a2 <= a3 with a1 = min Kbar, a3 = max Kbar and |b_i-b_j| <= |a_i-a_j|.
inline NormalForm berger_normal_form(const CurvOp& w, double c_tol = 1e-8) {
  double cn = std::sqrt(mat3_norm2(hodge_block(w, +1, -1)));
  if (cn > c_tol * std::max(1.0, std::sqrt(w.norm2())))
    throw std::invalid_argument("berger_normal_form: nonzero C-block");
  Mat3 wp = hodge_block(w, +1, +1), wm = hodge_block(w, -1, -1);
  Mat3 vp, vm;
  Vec3 dp, dm;
  detail::oriented_eigh(wp, vp, dp);
  detail::oriented_eigh(wm, vm, dm);
  NormalForm nf;
  nf.frame = detail::rotation_from_quat_pair(detail::quat_from_rot3(vp),
                                             detail::quat_from_rot3(vm));
  for (int k = 0; k < 3; ++k) {
    nf.a[k] = 0.5 * (dp[k] + dm[k]);
    nf.b[k] = 0.5 * (dp[k] - dm[k]);
  }
  return nf;
}

/// components of an operator in the (rotated) frame given by nf.frame
inline CurvOp conjugate_to_frame(const CurvOp& op, const Mat4& frame) {
  auto L = induced_lambda2_rotation(frame);  // columns
  CurvOp out;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      double s = 0;
      for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v) s += L[p][u] * op.m[u][v] * L[q][v];
      out.m[p][q] = s;
    }
  return out;
}

/// the [[A,B],[B,A]] operator built from normal-form eigendata
inline CurvOp normal_form_operator(const Vec3& a, const Vec3& b) {
  CurvOp out;
  for (int k = 0; k < 3; ++k) {
    out.m[k][k] = a[k];
    out.m[k + 3][k + 3] = a[k];
    out.m[k][k + 3] = b[k];
    out.m[k + 3][k] = b[k];
  }
  return out;
}

}  // namespace grs
