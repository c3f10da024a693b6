#pragma once

// Exact algebra of bivectors on oriented R^4.
//
// All six-component arrays use the fixed ordered basis
//     (e12, e13, e14, e34, e42, e23)
// of Lambda^2, with the orientation vol = e1^e2^e3^e4. In this order the
// Hodge star is the block swap (1,2,3) <-> (4,5,6), self-dual elements have
// equal blocks and anti-self-dual elements opposite blocks.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace grs {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Vec6 = std::array<double, 6>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// index pairs of the basis bivectors (0-based); slot 4 is e42 = e4^e2
inline constexpr int kPair[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};

// slot and sign for an ordered pair i<j: e_ij = sign * basis[slot]
struct PairSlot {
  int slot;
  double sign;
};

inline constexpr PairSlot pair_slot(int i, int j) {
  // only i != j expected
  if (i > j) {
    PairSlot p = pair_slot(j, i);
    return {p.slot, -p.sign};
  }
  if (i == 0) return {j - 1, 1.0};        // e12,e13,e14 -> 0,1,2
  if (i == 1) return (j == 2) ? PairSlot{5, 1.0} : PairSlot{4, -1.0};  // e23; e24=-e42
  return {3, 1.0};                        // e34
}

inline double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double dot(const Vec6& a, const Vec6& b) {
  double s = 0;
  for (int k = 0; k < 6; ++k) s += a[k] * b[k];
  return s;
}
inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }
inline double norm(const Vec6& a) { return std::sqrt(dot(a, a)); }

inline Vec4 basis4(int i) {
  Vec4 e{};
  e[i] = 1.0;
  return e;
}
inline Vec6 basis6(int s) {
  Vec6 e{};
  e[s] = 1.0;
  return e;
}

/// u ^ v in the fixed basis. The e42 slot carries -(u^v)_{24}.
inline Vec6 wedge(const Vec4& u, const Vec4& v) {
  Vec6 w{};
  for (int s = 0; s < 6; ++s) {
    const int i = kPair[s][0], j = kPair[s][1];
    w[s] = u[i] * v[j] - u[j] * v[i];
  }
  return w;
}

/// alpha acting on x: (U^V)X = <V,X>U - <U,X>V, extended linearly.
inline Vec4 act(const Vec6& alpha, const Vec4& x) {
  Vec4 y{};
  for (int s = 0; s < 6; ++s) {
    const int i = kPair[s][0], j = kPair[s][1];
    y[i] += alpha[s] * x[j];
    y[j] -= alpha[s] * x[i];
  }
  return y;
}

/// matrix M with act(alpha,x) = M x
inline Mat4 act_matrix(const Vec6& alpha) {
  Mat4 m{};
  for (int c = 0; c < 4; ++c) {
    Vec4 y = act(alpha, basis4(c));
    for (int r = 0; r < 4; ++r) m[r][c] = y[r];
  }
  return m;
}

/// Hodge star: swaps the (e12,e13,e14) and (e34,e42,e23) blocks.
inline Vec6 hodge_star(const Vec6& a) {
  return {a[3], a[4], a[5], a[0], a[1], a[2]};
}

/// projection onto the +/-1 eigenspace of the star
inline Vec6 project_pm(const Vec6& a, int sign) {
  Vec6 s = hodge_star(a);
  Vec6 out;
  for (int k = 0; k < 6; ++k) out[k] = 0.5 * (a[k] + sign * s[k]);
  return out;
}

/// orthonormal basis of Lambda^2_± : ((e12±e34), (e13∓e24), (e14±e23))/sqrt2.
/// Note e13 - e24 = e13 + e42 in the fixed slot order.
inline std::array<Vec6, 3> hodge_basis(int sign) {
  const double r = 1.0 / std::sqrt(2.0);
  std::array<Vec6, 3> b{};
  for (int k = 0; k < 3; ++k) {
    b[k][k] = r;
    b[k][k + 3] = sign * r;
  }
  return b;
}

struct TripleCheck {
  bool ok = true;
  std::string failed_relation;  // empty when ok
};

/// Checks the quaternion relations a_i^2 = -Id, a_i a_j = a_k (sign(i,j,k)=1)
/// for a positively oriented triple of self-dual bivectors of norm sqrt2.
/// Products are composed in right-action order, (a b)(x) = b(a(x)), the
/// convention in which the sqrt2-scaled standard self-dual basis passes.
inline TripleCheck quaternion_triple_check(const std::array<Vec6, 3>& a, double tol = 1e-10) {
  Mat4 m[3];
  for (int k = 0; k < 3; ++k) m[k] = act_matrix(a[k]);
  auto mul = [](const Mat4& x, const Mat4& y) {  // right-action: y after x? see below
    Mat4 z{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int p = 0; p < 4; ++p) z[r][c] += x[r][p] * y[p][c];
    return z;
  };
  auto maxdiff = [](const Mat4& x, const Mat4& y) {
    double w = 0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) w = std::max(w, std::abs(x[r][c] - y[r][c]));
    return w;
  };
  for (int k = 0; k < 3; ++k) {
    Mat4 sq = mul(m[k], m[k]);
    for (int r = 0; r < 4; ++r) sq[r][r] += 1.0;
    double w = 0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) w = std::max(w, std::abs(sq[r][c]));
    if (w > tol) return {false, "alpha_" + std::to_string(k + 1) + "^2 != -Id"};
  }
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (auto& c : cyc) {
    // (a_i a_j)(x) = a_j(a_i(x))  =>  matrix product m[j] * m[i]
    Mat4 prod = mul(m[c[1]], m[c[0]]);
    if (maxdiff(prod, m[c[2]]) > tol)
      return {false, "alpha_" + std::to_string(c[0] + 1) + " alpha_" + std::to_string(c[1] + 1) +
                         " != alpha_" + std::to_string(c[2] + 1)};
  }
  return {true, {}};
}

/// 6x6 rotation of Lambda^2 induced by a frame rotation R (columns = new frame).
inline std::array<Vec6, 6> induced_lambda2_rotation(const Mat4& R) {
  std::array<Vec6, 6> L{};  // L[s] = column s
  for (int s = 0; s < 6; ++s) {
    const int i = kPair[s][0], j = kPair[s][1];
    Vec4 ci, cj;
    for (int r = 0; r < 4; ++r) {
      ci[r] = R[r][i];
      cj[r] = R[r][j];
    }
    L[s] = wedge(ci, cj);
  }
  return L;
}

}  // namespace grs
