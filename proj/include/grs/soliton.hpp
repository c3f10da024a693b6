#pragma once

// Pointwise gradient-Ricci-soliton jets: the PointGeometry record used by all
// framework identities, its consistency diagnostics, and the seeded synthetic
// jet generator used by the algebraic property suites.

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <stdexcept>

#include "grs/curvature.hpp"

namespace grs {

/// the full pointwise soliton jet in an orthonormal frame
struct PointGeometry {
  CurvOp R;
  SymMat4 Rc;
  double S = 0;
  Vec4 gradf{};
  SymMat4 hessf;
  double lambda = 0;
  int n = 4;  // coefficient dimension in the n-parametric formulas

  // optional first-order jets
  bool has_jets = false;
  std::array<SymMat4, 4> gradRc{};  // gradRc[m] = nabla_m Rc
  Vec4 gradS{};
  bool has_gradR = false;
  std::array<CurvOp, 4> gradR{};    // gradR[m] = nabla_m R

  SymMat4 traceless_ricci() const { return Rc - (S / 4.0) * SymMat4::identity(); }
};

struct SolitonResiduals {
  double ricci_contraction = 0;  // max |Rc - contraction(R)|
  double soliton_equation = 0;   // max |Rc + Hess f - lambda g|
  double trace_identity = 0;     // S + lap f - n lambda
  double rc_gradf = 0;           // max |Rc(grad f) - gradS/2|   (needs jets)
  double contracted_bianchi = 0; // max_i |sum_j gradRc[j](i,j) - gradS_i/2| (needs jets)
  double max() const {
    double w = std::max(ricci_contraction, soliton_equation);
    w = std::max(w, std::abs(trace_identity));
    w = std::max(w, rc_gradf);
    return std::max(w, contracted_bianchi);
  }
};

inline SolitonResiduals point_geometry_residuals(const PointGeometry& pg) {
  SolitonResiduals r;
  SymMat4 rc = ricci_contraction(pg.R);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      r.ricci_contraction = std::max(r.ricci_contraction, std::abs(rc.m[i][j] - pg.Rc.m[i][j]));
      double sol = pg.Rc.m[i][j] + pg.hessf.m[i][j] - (i == j ? pg.lambda : 0.0);
      r.soliton_equation = std::max(r.soliton_equation, std::abs(sol));
    }
  r.trace_identity = pg.S + pg.hessf.trace() - pg.n * pg.lambda;
  if (pg.has_jets) {
    Vec4 rg = pg.Rc.apply(pg.gradf);
    for (int i = 0; i < 4; ++i)
      r.rc_gradf = std::max(r.rc_gradf, std::abs(rg[i] - 0.5 * pg.gradS[i]));
    for (int i = 0; i < 4; ++i) {
      double s = 0;
      for (int j = 0; j < 4; ++j) s += pg.gradRc[j].m[i][j];
      r.contracted_bianchi = std::max(r.contracted_bianchi, std::abs(s - 0.5 * pg.gradS[i]));
    }
  }
  return r;
}

/// require a valid soliton jet before running identities that presume it
inline void require_soliton(const PointGeometry& pg, double tol = 1e-8) {
  SolitonResiduals r = point_geometry_residuals(pg);
  double scale = std::max(1.0, std::sqrt(pg.R.norm2()) + std::abs(pg.lambda));
  if (r.max() > tol * scale)
    throw std::invalid_argument("PointGeometry violates the soliton constraints");
}

/// random symmetric 6x6 with the first-Bianchi trace condition projected out
template <class Rng>
inline CurvOp random_curvature(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  CurvOp r;
  for (int p = 0; p < 6; ++p)
    for (int q = p; q < 6; ++q) r.m[p][q] = r.m[q][p] = gauss(rng);
  double t = (r.m[0][3] + r.m[1][4] + r.m[2][5]) / 3.0;
  for (int k = 0; k < 3; ++k) {
    r.m[k][k + 3] -= t;
    r.m[k + 3][k] -= t;
  }
  return r;
}

/// random Weyl operator: the W part of a random curvature
template <class Rng>
inline CurvOp random_weyl(Rng& rng, double scale = 1.0) {
  return decompose(random_curvature(rng, scale)).W;
}

/// the algebraic P form: P(alpha,Z) = R(alpha, gradf ^ Z), stored on the
/// 6x4 grid (defined here because the generator pins gradRc against it)
inline std::array<Vec4, 6> p_tensor_rows(const CurvOp& R, const Vec4& gradf) {
  std::array<Vec4, 6> p{};
  for (int s = 0; s < 6; ++s) {
    Vec6 row = R.apply(basis6(s));  // symmetric: row = R(e_s, .)
    for (int k = 0; k < 4; ++k) p[s][k] = dot(row, wedge(gradf, basis4(k)));
  }
  return p;
}

struct SyntheticJetOptions {
  double lambda = 1.0;
  double scale = 1.0;
  bool with_gradR = false;
};

/// Seeded synthetic soliton jet: random Bianchi-valid R and gradf; Rc by
/// contraction; hessf := lambda g - Rc; gradS := 2 Rc(gradf); gradRc random
/// symmetric-in-last-two, least-norm projected onto
///   { antisymmetrized part = i_gradf R  (equaP),  trace = gradS },
/// which implies the contracted Bianchi identity. Optionally gradR random
/// Bianchi-symmetric per direction projected onto { contraction = gradRc,
/// contracted second Bianchi }.
template <class Rng>
inline PointGeometry synthetic_soliton_jet(Rng& rng, const SyntheticJetOptions& opt = {}) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  PointGeometry pg;
  pg.lambda = opt.lambda;
  pg.R = random_curvature(rng, opt.scale);
  pg.Rc = ricci_contraction(pg.R);
  pg.S = pg.Rc.trace();
  for (int i = 0; i < 4; ++i) pg.gradf[i] = gauss(rng) * opt.scale;
  pg.hessf = pg.lambda * SymMat4::identity() - pg.Rc;
  Vec4 rg = pg.Rc.apply(pg.gradf);
  for (int i = 0; i < 4; ++i) pg.gradS[i] = 2.0 * rg[i];
  pg.has_jets = true;

  // --- gradRc: 40 dof T[k][(i<=j)] with affine constraints ---
  auto p_alg = p_tensor_rows(pg.R, pg.gradf);
  constexpr int kDof = 40;
  int col_of[4][4][4];
  {
    int c = 0;
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          col_of[k][i][j] = c;
          col_of[k][j][i] = c;
          ++c;
        }
  }
  Eigen::VectorXd v(kDof);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) v(col_of[k][i][j]) = gauss(rng) * opt.scale;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(28, kDof);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(28);
  int row = 0;
  for (int s = 0; s < 6; ++s) {  // T[i][j][k] - T[j][i][k] = P_{ijk}
    const int i = kPair[s][0] < kPair[s][1] ? kPair[s][0] : kPair[s][1];
    const int j = kPair[s][0] < kPair[s][1] ? kPair[s][1] : kPair[s][0];
    PairSlot ps = pair_slot(i, j);
    for (int k = 0; k < 4; ++k) {
      A(row, col_of[i][j][k]) += 1.0;
      A(row, col_of[j][i][k]) -= 1.0;
      b(row) = ps.sign * p_alg[ps.slot][k];
      ++row;
    }
  }
  for (int k = 0; k < 4; ++k) {  // sum_j T[k][j][j] = gradS_k
    for (int j = 0; j < 4; ++j) A(row, col_of[k][j][j]) += 1.0;
    b(row) = pg.gradS[k];
    ++row;
  }
  Eigen::VectorXd corr =
      A.completeOrthogonalDecomposition().solve(Eigen::VectorXd(A * v - b));
  v -= corr;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) pg.gradRc[k].m[i][j] = v(col_of[k][i][j]);

  if (opt.with_gradR) {
    // --- gradR: 4 x 21 dof, constraints: Bianchi trace, contraction, 2nd Bianchi ---
    constexpr int kDofR = 84;
    int rc_of[4][6][6];
    {
      int c = 0;
      for (int m = 0; m < 4; ++m)
        for (int p = 0; p < 6; ++p)
          for (int q = p; q < 6; ++q) {
            rc_of[m][p][q] = c;
            rc_of[m][q][p] = c;
            ++c;
          }
    }
    Eigen::VectorXd w(kDofR);
    for (int c = 0; c < kDofR; ++c) w(c) = gauss(rng) * opt.scale;
    // rows: 4 (bianchi) + 40 (contraction) + 24 (contracted 2nd bianchi)
    Eigen::MatrixXd Ar = Eigen::MatrixXd::Zero(68, kDofR);
    Eigen::VectorXd br = Eigen::VectorXd::Zero(68);
    int rr = 0;
    for (int m = 0; m < 4; ++m) {  // tr(Y) = 0
      for (int k = 0; k < 3; ++k) Ar(rr, rc_of[m][k][k + 3]) += 1.0;
      br(rr) = 0.0;
      ++rr;
    }
    // contraction: sum_i (gradR[m])_{ijil} = gradRc[m]_{jl}
    for (int m = 0; m < 4; ++m)
      for (int j = 0; j < 4; ++j)
        for (int l = j; l < 4; ++l) {
          for (int i = 0; i < 4; ++i) {
            if (i == j || i == l) continue;
            PairSlot pa = pair_slot(i, j), pb = pair_slot(i, l);
            Ar(rr, rc_of[m][pa.slot][pb.slot]) += pa.sign * pb.sign;
          }
          br(rr) = pg.gradRc[m].m[j][l];
          ++rr;
        }
    // contracted 2nd Bianchi: sum_p (gradR[p])_{ijkp} = -P_{ijk}
    for (int s = 0; s < 6; ++s) {
      const int i = kPair[s][0], j = kPair[s][1];
      for (int k = 0; k < 4; ++k) {
        for (int p = 0; p < 4; ++p) {
          if (p == k) continue;
          PairSlot pa = pair_slot(i, j), pb = pair_slot(k, p);
          Ar(rr, rc_of[p][pa.slot][pb.slot]) += pa.sign * pb.sign;
        }
        br(rr) = -p_alg[s][k];
        ++rr;
      }
    }
    Eigen::VectorXd corr2 =
        Ar.completeOrthogonalDecomposition().solve(Eigen::VectorXd(Ar * w - br));
    w -= corr2;
    for (int m = 0; m < 4; ++m)
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) pg.gradR[m].m[p][q] = w(rc_of[m][p][q]);
    pg.has_gradR = true;
  }
  return pg;
}

}  // namespace grs
