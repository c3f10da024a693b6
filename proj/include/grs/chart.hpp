#pragma once

// Numerical differential geometry on a coordinate chart: from closed-form
// metric and potential functions, compute the full pointwise geometry
// (curvature, first and second covariant derivative jets, Laplacians) in an
// orthonormalized frame.
//
// Everything downstream of the metric jets is a single pipeline; the
// derivative policy only decides how the jets are filled (Taylor arithmetic
// for closed forms, Fornberg stencils for the FD policy). Frame components
// are produced by Gram-Schmidt on the coordinate frame at the queried point;
// covariant derivatives are computed in coordinates with explicit Christoffel
// corrections and then converted, which is equivalent to a normal frame.

#include <functional>
#include <string>

#include "grs/fd.hpp"
#include "grs/framework.hpp"

namespace grs {

struct Box {
  Vec4 lo{-1, -1, -1, -1};
  Vec4 hi{1, 1, 1, 1};
  bool contains(const Vec4& x, double margin = 0.0) const {
    for (int i = 0; i < 4; ++i)
      if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
  }
};

struct DerivPolicy {
  enum class Kind { Analytic, FiniteDifference };
  Kind kind = Kind::Analytic;
  int order = 4;      // FD accuracy order: 2, 4 or 6
  double step = 1e-3; // FD step on unit-scale charts
};

struct MetricJets {
  Jet g[4][4];
  Jet f;
};

/// coordinate-chart metric and potential with a derivative policy
struct ChartGeometry {
  std::string name;
  double lambda = 0;
  bool soliton = false;  // carries a declared soliton structure
  Box domain;
  DerivPolicy policy;
  std::function<void(const JetVec4&, MetricJets&)> jet_eval;
  std::function<void(const Vec4&, Mat4&, double&)> val_eval;
};

/// build a chart from a functor templated on the scalar type:
///   template <class T> void operator()(const std::array<T,4>& x,
///                                      std::array<std::array<T,4>,4>& g, T& f) const;
template <class F>
inline ChartGeometry make_chart(F f, std::string name, double lambda, bool soliton, Box domain,
                                DerivPolicy policy = {}) {
  ChartGeometry c;
  c.name = std::move(name);
  c.lambda = lambda;
  c.soliton = soliton;
  c.domain = domain;
  c.policy = policy;
  c.jet_eval = [f](const JetVec4& x, MetricJets& out) {
    std::array<std::array<Jet, 4>, 4> g;
    Jet pot;
    f(x, g, pot);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.g[i][j] = g[i][j];
    out.f = pot;
  };
  c.val_eval = [f](const Vec4& x, Mat4& g, double& pot) {
    std::array<std::array<double, 4>, 4> gg;
    std::array<double, 4> xx = x;
    f(xx, gg, pot);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = gg[i][j];
  };
  return c;
}

inline MetricJets metric_jets_at(const ChartGeometry& chart, const Vec4& x) {
  MetricJets mj;
  if (chart.policy.kind == DerivPolicy::Kind::Analytic) {
    if (!chart.domain.contains(x)) throw std::invalid_argument("point outside chart domain");
    chart.jet_eval(seed_jets(x), mj);
    return mj;
  }
  const double margin = (stencil_radius(4, chart.policy.order) + 0.5) * chart.policy.step;
  if (!chart.domain.contains(x, margin))
    throw std::invalid_argument("FD stencil leaves the chart domain");
  Jet fields[11];
  auto values = [&](const Vec4& p, double* out) {
    Mat4 g;
    double pot;
    chart.val_eval(p, g, pot);
    int c = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) out[c++] = g[i][j];
    out[10] = pot;
  };
  fd_jets(values, x, chart.policy.order, chart.policy.step, 11, fields);
  int c = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      mj.g[i][j] = fields[c];
      mj.g[j][i] = fields[c];
      ++c;
    }
  mj.f = fields[10];
  return mj;
}

/// full evaluated geometry at a chart point, frame components throughout
struct ChartPoint {
  Vec4 x{};
  double lambda = 0;
  Mat4 frame{};  // columns: orthonormal frame in coordinates
  double f = 0;

  PointGeometry pg;  // includes gradRc/gradS/gradR jets
  CurvatureDecomposition dec;

  std::array<CurvOp, 4> gradW{};    // frame nabla_e W
  std::array<SymMat4, 4> gradHess{};
  CurvOp lapR, lapW;
  SymMat4 lapRc;
  double lapS = 0;

  double grad_w2_plus() const {  // |nabla W+|^2
    double s = 0;
    for (int e = 0; e < 4; ++e) s += mat3_norm2(hodge_block(gradW[e], +1, +1));
    return s;
  }
  double grad_w2_full() const {
    double s = 0;
    for (int e = 0; e < 4; ++e) s += gradW[e].norm2();
    return s;
  }
  Vec4 grad_normsq_w(int sign) const {  // nabla_e |W±|^2 (0 = full W)
    Vec4 out{};
    for (int e = 0; e < 4; ++e) {
      if (sign == 0)
        out[e] = 2.0 * inner(dec.W, gradW[e]);
      else
        out[e] = 2.0 * mat3_inner(hodge_block(dec.W, sign, sign),
                                  hodge_block(gradW[e], sign, sign));
    }
    return out;
  }
};

namespace chart_detail {

// Cholesky g = L L^T, returns B = L^{-T} (columns = Gram-Schmidt frame)
inline Mat4 orthonormal_frame(const Mat4& g) {
  double L[4][4] = {};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g[i][j];
      for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      if (i == j) {
        if (s <= 0) throw std::invalid_argument("metric not positive definite");
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  // invert lower-triangular L, then transpose
  double Li[4][4] = {};
  for (int i = 0; i < 4; ++i) {
    Li[i][i] = 1.0 / L[i][i];
    for (int j = i - 1; j >= 0; --j) {
      double s = 0;
      for (int k = j; k < i; ++k) s += L[i][k] * Li[k][j];
      Li[i][j] = -s / L[i][i];
    }
  }
  Mat4 B{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) B[r][c] = Li[c][r];
  return B;
}

inline void invert_jet_matrix(const Jet G[4][4], Jet Ginv[4][4]) {
  Jet A[4][8];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      A[i][j] = G[i][j];
      A[i][4 + j] = Jet(i == j ? 1.0 : 0.0);
    }
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(A[r][col].val()) > std::abs(A[piv][col].val())) piv = r;
    if (piv != col)
      for (int j = 0; j < 8; ++j) std::swap(A[col][j], A[piv][j]);
    Jet d = A[col][col].inv();
    for (int j = 0; j < 8; ++j) A[col][j] = A[col][j] * d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      Jet fct = A[r][col];
      for (int j = 0; j < 8; ++j) A[r][j] -= Jet::mul(fct, A[col][j]);
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Ginv[i][j] = A[i][4 + j];
}

}  // namespace chart_detail

enum class ChartWant { Curvature, FirstJets, SecondJets };

inline ChartPoint chart_point_at(const ChartGeometry& chart, const Vec4& x,
                                 ChartWant want = ChartWant::SecondJets) {
  MetricJets mj = metric_jets_at(chart, x);
  ChartPoint cp;
  cp.x = x;
  cp.lambda = chart.lambda;
  cp.f = mj.f.val();

  // Christoffels (jets to degree 3)
  Jet Ginv[4][4];
  chart_detail::invert_jet_matrix(mj.g, Ginv);
  static thread_local std::array<Jet, 64> gam_store;
  auto Gam = [&](int a, int i, int j) -> Jet& { return gam_store[(a * 4 + i) * 4 + j]; };
  {
    Jet dg[4][4][4];  // dg[k][i][j] = partial_k g_ij
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
          for (int b = 0; b < 4; ++b) {
            Jet t = dg[i][j][b] + dg[j][i][b] - dg[b][i][j];
            s += Jet::mul(Ginv[a][b], t, 3);
          }
          Gam(a, i, j) = s * 0.5;
          Gam(a, j, i) = Gam(a, i, j);
        }
  }

  // Riemann tensor (jets to degree 2), sign convention: round sphere positive
  //   R_{ijkl} = -g_{lm} ( d_i Gam^m_jk - d_j Gam^m_ik + Gam Gam - Gam Gam )
  static thread_local std::array<Jet, 256> r_store;
  auto Rlow = [&](int i, int j, int k, int l) -> Jet& {
    return r_store[((i * 4 + j) * 4 + k) * 4 + l];
  };
  {
    Jet up[4];  // T^m_{ijk} for fixed (i,j,k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (j <= i) continue;  // antisymmetric in (i,j)
        for (int k = 0; k < 4; ++k) {
          for (int m = 0; m < 4; ++m) {
            Jet t = Gam(m, j, k).partial(i) - Gam(m, i, k).partial(j);
            for (int p = 0; p < 4; ++p)
              t += Jet::mul(Gam(m, i, p), Gam(p, j, k), 2) -
                   Jet::mul(Gam(m, j, p), Gam(p, i, k), 2);
            up[m] = t;
          }
          for (int l = 0; l < 4; ++l) {
            Jet s;
            for (int m = 0; m < 4; ++m) s += Jet::mul(mj.g[l][m], up[m], 2);
            Rlow(i, j, k, l) = -s;
            Rlow(j, i, k, l) = s;
          }
        }
      }
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l)
        for (int i = 0; i < 4; ++i) Rlow(i, i, k, l) = Jet();
  }

  // Hessian of f (jets to degree 2)
  Jet hess[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Jet t = mj.f.partial(i).partial(j);
      for (int p = 0; p < 4; ++p) t -= Jet::mul(Gam(p, i, j), mj.f.partial(p), 2);
      hess[i][j] = t;
      hess[j][i] = t;
    }

  // first covariant derivative of R (jets to degree 1)
  static thread_local std::array<Jet, 1024> dr_store;
  auto dR = [&](int e, int i, int j, int k, int l) -> Jet& {
    return dr_store[(((e * 4 + i) * 4 + j) * 4 + k) * 4 + l];
  };
  const bool want_first = want != ChartWant::Curvature;
  if (want_first) {
    for (int e = 0; e < 4; ++e)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
              Jet t = Rlow(i, j, k, l).partial(e);
              for (int p = 0; p < 4; ++p) {
                t -= Jet::mul(Gam(p, e, i), Rlow(p, j, k, l), 1);
                t -= Jet::mul(Gam(p, e, j), Rlow(i, p, k, l), 1);
                t -= Jet::mul(Gam(p, e, k), Rlow(i, j, p, l), 1);
                t -= Jet::mul(Gam(p, e, l), Rlow(i, j, k, p), 1);
              }
              dR(e, i, j, k, l) = t;
            }
  }

  // second covariant derivative, contracted to the rough Laplacian (values)
  double lapR_coord[4][4][4][4] = {};
  if (want == ChartWant::SecondJets) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double acc = 0;
            for (int n = 0; n < 4; ++n)
              for (int m = 0; m < 4; ++m) {
                double gmn = Ginv[n][m].val();
                if (gmn == 0.0) continue;
                double t = dR(m, i, j, k, l).partial(n).val();
                for (int p = 0; p < 4; ++p) {
                  t -= Gam(p, n, m).val() * dR(p, i, j, k, l).val();
                  t -= Gam(p, n, i).val() * dR(m, p, j, k, l).val();
                  t -= Gam(p, n, j).val() * dR(m, i, p, k, l).val();
                  t -= Gam(p, n, k).val() * dR(m, i, j, p, l).val();
                  t -= Gam(p, n, l).val() * dR(m, i, j, k, p).val();
                }
                acc += gmn * t;
              }
            lapR_coord[i][j][k][l] = acc;
          }
  }

  // orthonormal frame and conversions
  Mat4 g0{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g0[i][j] = mj.g[i][j].val();
  cp.frame = chart_detail::orthonormal_frame(g0);
  const Mat4& B = cp.frame;

  auto frame4 = [&](auto&& comp) {
    // contract a coordinate (0,4)-tensor (callable) into frame components
    double out[4][4][4][4];
    double t1[4][4][4][4], t2[4][4][4][4], t3[4][4][4][4];
    for (int a = 0; a < 4; ++a)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double s = 0;
            for (int i = 0; i < 4; ++i) s += B[i][a] * comp(i, j, k, l);
            t1[a][j][k][l] = s;
          }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double s = 0;
            for (int j = 0; j < 4; ++j) s += B[j][b] * t1[a][j][k][l];
            t2[a][b][k][l] = s;
          }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int l = 0; l < 4; ++l) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += B[k][c] * t2[a][b][k][l];
            t3[a][b][c][l] = s;
          }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            double s = 0;
            for (int l = 0; l < 4; ++l) s += B[l][d] * t3[a][b][c][l];
            out[a][b][c][d] = s;
          }
    return curv_from_r4([&](int i, int j, int k, int l) { return out[i][j][k][l]; });
  };

  cp.pg.R = frame4([&](int i, int j, int k, int l) { return Rlow(i, j, k, l).val(); });
  cp.pg.Rc = ricci_contraction(cp.pg.R);
  cp.pg.S = cp.pg.Rc.trace();
  cp.pg.lambda = chart.lambda;
  cp.dec = decompose(cp.pg.R, 1e-5);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double hf = 0, gf = 0;
      for (int p = 0; p < 4; ++p) {
        gf += B[p][i] * mj.f.partial(p).val();
        for (int q = 0; q < 4; ++q) hf += B[p][i] * B[q][j] * hess[p][q].val();
      }
      cp.pg.hessf.m[i][j] = hf;
      if (j == 0) cp.pg.gradf[i] = gf;
    }

  if (want_first) {
    cp.pg.has_jets = true;
    cp.pg.has_gradR = true;
    const CurvOp gg = kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
    for (int e = 0; e < 4; ++e) {
      CurvOp dRe = frame4([&](int i, int j, int k, int l) {
        double s = 0;
        for (int m = 0; m < 4; ++m) s += B[m][e] * dR(m, i, j, k, l).val();
        return s;
      });
      cp.pg.gradR[e] = dRe;
      cp.pg.gradRc[e] = ricci_contraction(dRe);
      cp.pg.gradS[e] = cp.pg.gradRc[e].trace();
      SymMat4 gradE = cp.pg.gradRc[e] - (cp.pg.gradS[e] / 4.0) * SymMat4::identity();
      cp.gradW[e] = dRe - (cp.pg.gradS[e] / 24.0) * gg - 0.5 * kulkarni_nomizu(gradE, SymMat4::identity());
    }
    // nabla Hess f (coordinates, then frame)
    double dhess[4][4][4];
    for (int m = 0; m < 4; ++m)
      for (int p = 0; p < 4; ++p)
        for (int q = p; q < 4; ++q) {
          double t = hess[p][q].partial(m).val();
          for (int r = 0; r < 4; ++r)
            t -= Gam(r, m, p).val() * hess[r][q].val() + Gam(r, m, q).val() * hess[p][r].val();
          dhess[m][p][q] = t;
          dhess[m][q][p] = t;
        }
    for (int e = 0; e < 4; ++e)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double s = 0;
          for (int m = 0; m < 4; ++m)
            for (int p = 0; p < 4; ++p)
              for (int q = 0; q < 4; ++q) s += B[m][e] * B[p][i] * B[q][j] * dhess[m][p][q];
          cp.gradHess[e].m[i][j] = s;
        }
  }
  if (want == ChartWant::SecondJets) {
    const CurvOp gg = kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
    cp.lapR = frame4([&](int i, int j, int k, int l) { return lapR_coord[i][j][k][l]; });
    cp.lapRc = ricci_contraction(cp.lapR);
    cp.lapS = cp.lapRc.trace();
    SymMat4 lapE = cp.lapRc - (cp.lapS / 4.0) * SymMat4::identity();
    cp.lapW = cp.lapR - (cp.lapS / 24.0) * gg - 0.5 * kulkarni_nomizu(lapE, SymMat4::identity());
  }
  return cp;
}

/// PointGeometry with first-order jets at a chart point
inline PointGeometry point_geometry_at(const ChartGeometry& chart, const Vec4& x) {
  return chart_point_at(chart, x, ChartWant::FirstJets).pg;
}

struct SolitonChartResiduals {
  double soliton_equation = 0;  // max |Rc + Hess f - lambda g|
  double trace = 0;             // S + lap f - 4 lambda
  double rc_gradf = 0;          // max |Rc grad f - grad S / 2|
  double first_integral = 0;    // max |grad(S + |grad f|^2 - 2 lambda f)|
  double lap_s = 0;             // lap S + 2|Rc|^2 - <grad f, grad S> - 2 lambda S
  double max() const {
    return std::max({soliton_equation, std::abs(trace), rc_gradf, first_integral,
                     std::abs(lap_s)});
  }
};

inline SolitonChartResiduals soliton_residuals(const ChartGeometry& chart, const Vec4& x) {
  ChartPoint cp = chart_point_at(chart, x, ChartWant::SecondJets);
  const PointGeometry& pg = cp.pg;
  SolitonChartResiduals r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.soliton_equation =
          std::max(r.soliton_equation,
                   std::abs(pg.Rc.m[i][j] + cp.pg.hessf.m[i][j] - (i == j ? chart.lambda : 0.0)));
  r.trace = pg.S + pg.hessf.trace() - 4.0 * chart.lambda;
  Vec4 rg = pg.Rc.apply(pg.gradf);
  Vec4 hg = pg.hessf.apply(pg.gradf);
  for (int i = 0; i < 4; ++i) {
    r.rc_gradf = std::max(r.rc_gradf, std::abs(rg[i] - 0.5 * pg.gradS[i]));
    r.first_integral = std::max(
        r.first_integral,
        std::abs(pg.gradS[i] + 2.0 * hg[i] - 2.0 * chart.lambda * pg.gradf[i]));
  }
  r.lap_s = cp.lapS + 2.0 * pg.Rc.norm2() - dot(pg.gradf, pg.gradS) - 2.0 * chart.lambda * pg.S;
  return r;
}

/// divergence of the Weyl tensor at x as a framework tensor,
/// dW(alpha, Z) = sum_p (nabla_p W)_{i j Z p}
inline FrameworkTensor divergence_weyl_at(const ChartGeometry& chart, const Vec4& x) {
  ChartPoint cp = chart_point_at(chart, x, ChartWant::FirstJets);
  return fw_divergence(cp.gradW);
}

inline CurvOp laplacian_weyl_at(const ChartGeometry& chart, const Vec4& x) {
  return chart_point_at(chart, x, ChartWant::SecondJets).lapW;
}

/// drift Laplacian of a scalar field by outer finite differences over chart
/// evaluations: lap_f s = g^{mn}(d_m d_n s - Gam^p_mn d_p s) - <grad f, grad s>
inline double drift_laplacian_scalar_at(const ChartGeometry& chart, const Vec4& x,
                                        const std::function<double(const Vec4&)>& field,
                                        double h = 1e-4, int order = 4) {
  // coordinate partials of the field
  Jet s;
  auto values = [&](const Vec4& p, double* out) { out[0] = field(p); };
  fd_jets(values, x, order, h, 1, &s);
  MetricJets mj = metric_jets_at(chart, x);
  Jet Ginv[4][4];
  chart_detail::invert_jet_matrix(mj.g, Ginv);
  double lap = 0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double t = s.d(m, n);
      for (int p = 0; p < 4; ++p) {
        // Christoffel at the point
        double gam = 0;
        for (int b = 0; b < 4; ++b)
          gam += 0.5 * Ginv[p][b].val() *
                 (mj.g[n][b].partial(m).val() + mj.g[m][b].partial(n).val() -
                  mj.g[m][n].partial(b).val());
        t -= gam * s.d(p);
      }
      lap += Ginv[m][n].val() * t;
    }
  double drift = 0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) drift += Ginv[m][n].val() * mj.f.partial(m).val() * s.d(n);
  return lap - drift;
}

/// Covariant derivative of the curvature field by OUTER finite differences:
/// the coordinate Riemann tensor is sampled at stencil points (each through
/// its own metric jets) and differentiated, with Christoffel corrections at
/// the center. This is an independent differentiation route from the
/// single-jet chain and carries a genuine O(h^order) truncation error.
inline std::array<CurvOp, 4> grad_riemann_field_fd(const ChartGeometry& chart, const Vec4& x,
                                                   double h, int order) {
  const int r = stencil_radius(1, order);
  std::vector<double> nodes;
  for (int k = -r; k <= r; ++k) nodes.push_back(k);
  std::vector<double> w = fornberg_weights(1, nodes);
  auto coord_riemann = [&](const Vec4& p, double out[4][4][4][4]) {
    MetricJets mj = metric_jets_at(chart, p);
    Jet Ginv[4][4];
    chart_detail::invert_jet_matrix(mj.g, Ginv);
    Jet dg[4][4][4];
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          dg[k][i][j] = mj.g[i][j].partial(k);
          dg[k][j][i] = dg[k][i][j];
        }
    Jet gam[4][4][4];
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          Jet s;
          for (int b = 0; b < 4; ++b)
            s += Jet::mul(Ginv[a][b], dg[i][j][b] + dg[j][i][b] - dg[b][i][j], 1);
          gam[a][i][j] = s * 0.5;
          gam[a][j][i] = gam[a][i][j];
        }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) out[i][j][k][l] = 0.0;
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
            out[i][j][k][l] = -s;
            out[j][i][k][l] = s;
          }
        }
  };
  // partial derivatives of the R field along each axis
  static thread_local double dR[4][4][4][4][4];
  for (int m = 0; m < 4; ++m)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) dR[m][i][j][k][l] = 0.0;
  double rbuf[4][4][4][4];
  for (int m = 0; m < 4; ++m)
    for (int kk = -r; kk <= r; ++kk) {
      if (w[kk + r] == 0.0) continue;
      Vec4 p = x;
      p[m] += kk * h;
      coord_riemann(p, rbuf);
      const double ww = w[kk + r] / h;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) dR[m][i][j][k][l] += ww * rbuf[i][j][k][l];
    }
  // center data for the Christoffel corrections and frame
  MetricJets mj = metric_jets_at(chart, x);
  double r0[4][4][4][4];
  coord_riemann(x, r0);
  Jet Ginv[4][4];
  chart_detail::invert_jet_matrix(mj.g, Ginv);
  double gam[4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        double s = 0;
        for (int b = 0; b < 4; ++b)
          s += 0.5 * Ginv[a][b].val() *
               (mj.g[j][b].partial(i).val() + mj.g[i][b].partial(j).val() -
                mj.g[i][j].partial(b).val());
        gam[a][i][j] = s;
        gam[a][j][i] = s;
      }
  Mat4 g0{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g0[i][j] = mj.g[i][j].val();
  Mat4 B = chart_detail::orthonormal_frame(g0);
  std::array<CurvOp, 4> out;
  for (int e = 0; e < 4; ++e) {
    double cov[4][4][4][4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double t = 0;
            for (int m = 0; m < 4; ++m) {
              double bm = B[m][e];
              if (bm == 0.0) continue;
              double c = dR[m][i][j][k][l];
              for (int p = 0; p < 4; ++p)
                c -= gam[p][m][i] * r0[p][j][k][l] + gam[p][m][j] * r0[i][p][k][l] +
                     gam[p][m][k] * r0[i][j][p][l] + gam[p][m][l] * r0[i][j][k][p];
              t += bm * c;
            }
            cov[i][j][k][l] = t;
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
                    s += B[i][a] * B[j][b] * B[k][c] * B[l][d] * cov[i][j][k][l];
            rf[a][b][c][d] = s;
          }
    out[e] = curv_from_r4([&](int i, int j, int k, int l) { return rf[i][j][k][l]; });
  }
  return out;
}

struct FieldFdDivergenceResiduals {
  double riemann = 0;  // outer-FD dR vs -P(jets)
  double weyl = 0;     // outer-FD dW vs -(1/2)(P + Q/6)(jets)
  double max() const { return std::max(riemann, weyl); }
};

/// the two-route check: divergences from outer field differences against the
/// algebraic side built from the center-point jets
inline FieldFdDivergenceResiduals divergence_field_fd_residuals(const ChartGeometry& chart,
                                                                const Vec4& x, double h,
                                                                int order) {
  std::array<CurvOp, 4> gradR = grad_riemann_field_fd(chart, x, h, order);
  ChartPoint cp = chart_point_at(chart, x, ChartWant::FirstJets);
  const CurvOp gg = kulkarni_nomizu(SymMat4::identity(), SymMat4::identity());
  std::array<CurvOp, 4> gradW;
  for (int e = 0; e < 4; ++e) {
    SymMat4 dRc = ricci_contraction(gradR[e]);
    double dS = dRc.trace();
    SymMat4 dE = dRc - (dS / 4.0) * SymMat4::identity();
    gradW[e] = gradR[e] - (dS / 24.0) * gg - 0.5 * kulkarni_nomizu(dE, SymMat4::identity());
  }
  FrameworkTensor P, Q;
  for (int s = 0; s < 6; ++s) {
    const int i = kPair[s][0], j = kPair[s][1];
    for (int k = 0; k < 4; ++k) {
      P.t[s][k] = cp.pg.gradRc[i].m[j][k] - cp.pg.gradRc[j].m[i][k];
      Q.t[s][k] = (k == i ? cp.pg.gradS[j] : 0.0) - (k == j ? cp.pg.gradS[i] : 0.0);
    }
  }
  FieldFdDivergenceResiduals r;
  r.riemann = (fw_divergence(gradR) + P).max_abs();
  r.weyl = (fw_divergence(gradW) + 0.5 * (P + (1.0 / 6.0) * Q)).max_abs();
  return r;
}

struct GeneralDivergenceResiduals {
  double riemann = 0;  // dR vs -P          (second Bianchi, any metric)
  double s_gg = 0;     // d(S g∘g) vs 2Q
  double ricci_g = 0;  // d(Rc∘g) vs -P + Q/2
  double weyl = 0;     // dW vs -(1/2)(P + Q/6)   (Cotton representation)
  double pq = 0;       // 2<P,Q> + |dS|^2         (contracted Bianchi only)
  double max() const { return std::max({riemann, s_gg, ricci_g, weyl, pq}); }
};

/// metric-general divergence rows with P, Q built from the chart jets;
/// no soliton structure assumed
inline GeneralDivergenceResiduals general_divergence_residuals(const ChartPoint& cp) {
  FrameworkTensor P, Q;
  for (int s = 0; s < 6; ++s) {
    const int i = kPair[s][0], j = kPair[s][1];
    for (int k = 0; k < 4; ++k) {
      P.t[s][k] = cp.pg.gradRc[i].m[j][k] - cp.pg.gradRc[j].m[i][k];
      Q.t[s][k] = (k == i ? cp.pg.gradS[j] : 0.0) - (k == j ? cp.pg.gradS[i] : 0.0);
    }
  }
  const SymMat4 g = SymMat4::identity();
  const CurvOp gg = kulkarni_nomizu(g, g);
  std::array<CurvOp, 4> grad_sgg, grad_rcg;
  for (int m = 0; m < 4; ++m) {
    grad_sgg[m] = cp.pg.gradS[m] * gg;
    grad_rcg[m] = kulkarni_nomizu(cp.pg.gradRc[m], g);
  }
  GeneralDivergenceResiduals r;
  r.riemann = (fw_divergence(cp.pg.gradR) + P).max_abs();
  r.s_gg = (fw_divergence(grad_sgg) - 2.0 * Q).max_abs();
  r.ricci_g = (fw_divergence(grad_rcg) - (-1.0 * P + 0.5 * Q)).max_abs();
  r.weyl = (fw_divergence(cp.gradW) + 0.5 * (P + (1.0 / 6.0) * Q)).max_abs();
  r.pq = std::abs(2.0 * pairing(P, Q) + dot(cp.pg.gradS, cp.pg.gradS));
  return r;
}

struct BochnerChartResult {
  double lap_f_w2 = 0;        // drift Laplacian of |W+|^2 from jets
  double rhs = 0;             // 2|∇W+|^2 + 4λ|W+|^2 - 36 det W+ - <Rc∘Rc, W+>
  double residual = 0;
  double bwdiv_residual = 0;  // Einstein specialization  Δ|W+|^2 - (2|∇W+|^2 + S|W+|^2 - 36detW+)
  double kato_slack = 0;      // |∇W+|^2 - |∇|W+||^2  (>= 0)
};

inline BochnerChartResult bochner_check_at(const ChartGeometry& chart, const Vec4& x) {
  ChartPoint cp = chart_point_at(chart, x, ChartWant::SecondJets);
  Mat3 wp = hodge_block(cp.dec.W, +1, +1);
  Mat3 lap_wp = hodge_block(cp.lapW, +1, +1);
  const double w2 = mat3_norm2(wp);
  const double gw2 = cp.grad_w2_plus();
  Vec4 grad_w2 = cp.grad_normsq_w(+1);
  double lap_w2 = 2.0 * mat3_inner(wp, lap_wp) + 2.0 * gw2;
  BochnerChartResult out;
  out.lap_f_w2 = lap_w2 - dot(cp.pg.gradf, grad_w2);
  BochnerRhs rhs = bochner_rhs(cp.pg, gw2, 1e-5);
  out.rhs = rhs.via_ricci;
  out.residual = out.lap_f_w2 - out.rhs;
  out.bwdiv_residual =
      lap_w2 - (2.0 * gw2 + cp.pg.S * w2 - 36.0 * mat3_det(wp));
  out.kato_slack = (w2 > 1e-14) ? gw2 - dot(grad_w2, grad_w2) / (4.0 * w2) : gw2;
  return out;
}

}  // namespace grs
