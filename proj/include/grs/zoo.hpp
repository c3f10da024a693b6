#pragma once

// Closed-form example geometries with known curvature, soliton data, spectra,
// volumes, and topological invariants. Every entry self-validates its
// expectations at random interior points on construction.

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include "grs/chart.hpp"
#include "grs/rigidity.hpp"

namespace grs {

enum class SolitonType { None, Einstein, Shrinking, Steady };

struct ZooExpectations {
  double S = 0;              // scalar curvature (constant on the chart)
  Vec4 ricci_spectrum{};     // ascending
  Vec3 wplus_spectrum{};     // ascending; W- expected equal unless wminus_zero
  bool wminus_zero = false;  // Kaehler self-duality
  bool weyl_zero = false;
  bool closed = false;
  double volume = 0;         // closed entries
  int chi = 0, tau = 0;      // closed entries
};

struct ZooEntry {
  std::string name;
  ChartGeometry chart;
  SolitonType type = SolitonType::None;
  ZooExpectations expect;
  std::string provenance;
};

namespace zoo_metrics {

struct Gaussian {
  double lambda;
  template <class T>
  void operator()(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& g, T& f) const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = T(i == j ? 1.0 : 0.0);
    f = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) * (lambda / 2);
  }
};

/// stereographic round sphere factors: g = (2 r^2 / (r^2 + |y|^2))^2 on k coords
struct Sphere4 {
  double r;
  template <class T>
  void operator()(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& g, T& f) const {
    T s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    T c = (2 * r * r) / (s + r * r);
    T u2 = c * c;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = (i == j) ? u2 : T(0.0);
    f = T(0.0);
  }
};

struct CylinderS3xR {
  double r;
  template <class T>
  void operator()(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& g, T& f) const {
    T s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    T c = (2 * r * r) / (s + r * r);
    T u2 = c * c;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = T(0.0);
    g[0][0] = u2;
    g[1][1] = u2;
    g[2][2] = u2;
    g[3][3] = T(1.0);
    f = x[3] * x[3] * (1.0 / (r * r));  // lambda t^2 / 2 with lambda = 2/r^2
  }
};

struct S2xR2 {
  double r;
  template <class T>
  void operator()(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& g, T& f) const {
    T s = x[0] * x[0] + x[1] * x[1];
    T c = (2 * r * r) / (s + r * r);
    T u2 = c * c;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = T(0.0);
    g[0][0] = u2;
    g[1][1] = u2;
    g[2][2] = T(1.0);
    g[3][3] = T(1.0);
    f = (x[2] * x[2] + x[3] * x[3]) * (0.5 / (r * r));
  }
};

struct S2xS2 {
  double r1, r2;
  template <class T>
  void operator()(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& g, T& f) const {
    T s1 = x[0] * x[0] + x[1] * x[1];
    T s2 = x[2] * x[2] + x[3] * x[3];
    T c1 = (2 * r1 * r1) / (s1 + r1 * r1);
    T c2 = (2 * r2 * r2) / (s2 + r2 * r2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = T(0.0);
    g[0][0] = c1 * c1;
    g[1][1] = c1 * c1;
    g[2][2] = c2 * c2;
    g[3][3] = c2 * c2;
    f = T(0.0);
  }
};

/// Fubini-Study on the dense affine chart of CP^2, real coordinates
/// (x1,y1,x2,y2); normalization: g = [rho delta - A⊗A - J⊗J]/rho^2 with
/// rho = 1 + |z|^2 gives S = 24 (Einstein constant 6).
struct CP2FubiniStudy {
  template <class T>
  void operator()(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& g, T& f) const {
    T rho = 1.0 + x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    std::array<T, 4> A = {x[0], x[1], x[2], x[3]};
    std::array<T, 4> Jf = {-1.0 * x[1], x[0], -1.0 * x[3], x[2]};
    T irho2 = 1.0 / (rho * rho);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        T t = (i == j) ? rho : T(0.0);
        g[i][j] = (t - A[i] * A[j] - Jf[i] * Jf[j]) * irho2;
      }
    f = T(0.0);
  }
};

/// seeded non-soliton perturbation of the flat metric, with arbitrary f;
/// degree-3 polynomial entries keep everything smooth and SPD on a small box
struct RandomPolynomial {
  std::array<std::array<std::array<double, 4>, 4>, 10> c1{};
  std::array<std::array<std::array<double, 10>, 4>, 4> dummy{};
  double lin[10][4], quad[10][4][4], cub[10][4][4][4];
  double flin[4], fquad[4][4];
  RandomPolynomial(std::uint64_t seed, double amplitude) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (int c = 0; c < 10; ++c)
      for (int k = 0; k < 4; ++k) {
        lin[c][k] = amplitude * g(rng);
        for (int l = 0; l < 4; ++l) {
          quad[c][k][l] = 0.5 * amplitude * g(rng);
          for (int m = 0; m < 4; ++m) cub[c][k][l][m] = 0.25 * amplitude * g(rng);
        }
      }
    for (int k = 0; k < 4; ++k) {
      flin[k] = 0.4 * g(rng);
      for (int l = 0; l < 4; ++l) fquad[k][l] = 0.2 * g(rng);
    }
  }
  template <class T>
  void operator()(const std::array<T, 4>& x, std::array<std::array<T, 4>, 4>& g, T& f) const {
    int c = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        T t = T(i == j ? 1.0 : 0.0);
        for (int k = 0; k < 4; ++k) {
          t += x[k] * lin[c][k];
          for (int l = 0; l < 4; ++l) {
            t += x[k] * x[l] * quad[c][k][l];
            for (int m = 0; m < 4; ++m) t += x[k] * x[l] * x[m] * cub[c][k][l][m];
          }
        }
        g[i][j] = t;
        g[j][i] = t;
        ++c;
      }
    f = T(0.0);
    for (int k = 0; k < 4; ++k) {
      f += x[k] * flin[k];
      for (int l = 0; l < 4; ++l) f += x[k] * x[l] * fquad[k][l];
    }
  }
};

}  // namespace zoo_metrics

inline ChartGeometry gaussian_chart(double lambda) {
  return make_chart(zoo_metrics::Gaussian{lambda}, "gaussian", lambda, true,
                    Box{{-2, -2, -2, -2}, {2, 2, 2, 2}});
}
inline ChartGeometry sphere4_chart(double r) {
  return make_chart(zoo_metrics::Sphere4{r}, "sphere4", 3.0 / (r * r), true,
                    Box{{-0.8 * r, -0.8 * r, -0.8 * r, -0.8 * r}, {0.8 * r, 0.8 * r, 0.8 * r, 0.8 * r}});
}
inline ChartGeometry cylinder_s3xr_chart(double r) {
  return make_chart(zoo_metrics::CylinderS3xR{r}, "cylinder_s3xr", 2.0 / (r * r), true,
                    Box{{-0.8 * r, -0.8 * r, -0.8 * r, -1.5}, {0.8 * r, 0.8 * r, 0.8 * r, 1.5}});
}
inline ChartGeometry s2xr2_chart(double r) {
  return make_chart(zoo_metrics::S2xR2{r}, "s2xr2", 1.0 / (r * r), true,
                    Box{{-0.8 * r, -0.8 * r, -1.5, -1.5}, {0.8 * r, 0.8 * r, 1.5, 1.5}});
}
inline ChartGeometry s2xs2_chart(double r1, double r2) {
  return make_chart(zoo_metrics::S2xS2{r1, r2}, "s2xs2", 1.0 / (r1 * r1), true,
                    Box{{-0.8 * r1, -0.8 * r1, -0.8 * r2, -0.8 * r2},
                        {0.8 * r1, 0.8 * r1, 0.8 * r2, 0.8 * r2}});
}
inline ChartGeometry cp2_chart() {
  return make_chart(zoo_metrics::CP2FubiniStudy{}, "cp2_fubini_study", 6.0, true,
                    Box{{-0.7, -0.7, -0.7, -0.7}, {0.7, 0.7, 0.7, 0.7}});
}
inline ChartGeometry random_polynomial_chart(std::uint64_t seed, double amplitude,
                                             DerivPolicy policy = {DerivPolicy::Kind::FiniteDifference,
                                                                   4, 1e-2}) {
  return make_chart(zoo_metrics::RandomPolynomial(seed, amplitude), "random_polynomial", 0.0,
                    false, Box{{-0.4, -0.4, -0.4, -0.4}, {0.4, 0.4, 0.4, 0.4}}, policy);
}

inline std::vector<Vec4> sample_points(const Box& box, int count, std::uint64_t seed,
                                       double shrink = 0.35) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec4> pts(count);
  for (auto& p : pts)
    for (int i = 0; i < 4; ++i) {
      double c = 0.5 * (box.lo[i] + box.hi[i]), h = 0.5 * (box.hi[i] - box.lo[i]);
      p[i] = c + shrink * h * u(rng);
    }
  return pts;
}

namespace zoo_detail {

inline void require_close(double got, double want, double tol, const std::string& what) {
  if (std::abs(got - want) > tol * std::max(1.0, std::abs(want)))
    throw std::runtime_error("zoo expectation failed: " + what + " got " + std::to_string(got) +
                             " want " + std::to_string(want));
}

/// chart evaluation matches expectations at random interior points
inline void validate(const ZooEntry& e, int points = 10, std::uint64_t seed = 9001) {
  const double tol = 1e-8;
  for (const Vec4& x : sample_points(e.chart.domain, points, seed)) {
    ChartPoint cp = chart_point_at(e.chart, x, ChartWant::FirstJets);
    require_close(cp.pg.S, e.expect.S, tol, e.name + " scalar curvature");
    Eigen::Matrix4d rc;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rc(i, j) = cp.pg.Rc.m[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rc);
    for (int i = 0; i < 4; ++i)
      require_close(es.eigenvalues()(i), e.expect.ricci_spectrum[i], tol,
                    e.name + " ricci spectrum");
    if (e.expect.weyl_zero) {
      require_close(cp.dec.W.norm2(), 0.0, tol, e.name + " W = 0");
    } else {
      Mat3 v;
      Vec3 wp;
      detail::oriented_eigh(hodge_block(cp.dec.W, +1, +1), v, wp);
      for (int i = 0; i < 3; ++i)
        require_close(wp[i], e.expect.wplus_spectrum[i], tol, e.name + " W+ spectrum");
      double wm = mat3_norm2(hodge_block(cp.dec.W, -1, -1));
      if (e.expect.wminus_zero) require_close(wm, 0.0, tol, e.name + " W- = 0");
    }
    if (e.type == SolitonType::Shrinking || e.type == SolitonType::Einstein) {
      SolitonResiduals sr = point_geometry_residuals(cp.pg);
      if (sr.max() > 1e-8) throw std::runtime_error("zoo soliton residuals failed: " + e.name);
    }
  }
}

}  // namespace zoo_detail

/// the complete zoo; every entry self-validates on construction
inline std::vector<ZooEntry> zoo(std::uint64_t rp_seed = 7, double rp_amplitude = 0.05) {
  std::vector<ZooEntry> out;
  auto add = [&](ZooEntry e) {
    if (e.chart.policy.kind == DerivPolicy::Kind::Analytic) zoo_detail::validate(e);
    out.push_back(std::move(e));
  };
  {
    ZooEntry e{"gaussian", gaussian_chart(0.8), SolitonType::Shrinking, {}, "flat R^4, f = lambda|x|^2/2"};
    e.expect.weyl_zero = true;
    add(e);
  }
  {
    double r = 1.0;
    ZooEntry e{"sphere4", sphere4_chart(r), SolitonType::Einstein, {}, "round S^4(1), stereographic"};
    e.expect.S = 12.0 / (r * r);
    e.expect.ricci_spectrum = {3 / (r * r), 3 / (r * r), 3 / (r * r), 3 / (r * r)};
    e.expect.weyl_zero = true;
    e.expect.closed = true;
    e.expect.volume = 8.0 * M_PI * M_PI / 3.0 * r * r * r * r;
    e.expect.chi = 2;
    e.expect.tau = 0;
    add(e);
  }
  {
    double r = 1.0;
    ZooEntry e{"cylinder_s3xr", cylinder_s3xr_chart(r), SolitonType::Shrinking, {},
               "S^3(1) x R shrinker, f quadratic on the line"};
    e.expect.S = 6.0 / (r * r);
    e.expect.ricci_spectrum = {0, 2 / (r * r), 2 / (r * r), 2 / (r * r)};
    e.expect.weyl_zero = true;
    add(e);
  }
  {
    double r = 1.0;
    ZooEntry e{"s2xr2", s2xr2_chart(r), SolitonType::Shrinking, {},
               "S^2(1) x R^2 shrinker, f = |y|^2/2"};
    e.expect.S = 2.0 / (r * r);
    e.expect.ricci_spectrum = {0, 0, 1 / (r * r), 1 / (r * r)};
    e.expect.wplus_spectrum = {-1.0 / 6, -1.0 / 6, 1.0 / 3};
    add(e);
  }
  {
    double r = 1.0;
    ZooEntry e{"s2xs2", s2xs2_chart(r, r), SolitonType::Einstein, {},
               "S^2(1) x S^2(1), Einstein, f const"};
    e.expect.S = 4.0 / (r * r);
    e.expect.ricci_spectrum = {1, 1, 1, 1};
    e.expect.wplus_spectrum = {-1.0 / 3, -1.0 / 3, 2.0 / 3};
    e.expect.closed = true;
    e.expect.volume = 16.0 * M_PI * M_PI * r * r * r * r;
    e.expect.chi = 4;
    e.expect.tau = 0;
    add(e);
  }
  {
    ZooEntry e{"cp2_fubini_study", cp2_chart(), SolitonType::Einstein, {},
               "Fubini-Study on the affine chart, S = 24, Kaehler"};
    e.expect.S = 24.0;
    e.expect.ricci_spectrum = {6, 6, 6, 6};
    e.expect.wplus_spectrum = {-2, -2, 4};  // (S/6, -S/12, -S/12) ascending
    e.expect.wminus_zero = true;
    e.expect.closed = true;
    e.expect.chi = 3;
    e.expect.tau = 1;
    add(e);
  }
  {
    ZooEntry e{"random_polynomial", random_polynomial_chart(rp_seed, rp_amplitude),
               SolitonType::None, {}, "seeded generic metric, FD policy, identity tests only"};
    add(e);  // no closed-form expectations
  }
  return out;
}

inline ZooEntry zoo_by_name(const std::string& name, std::uint64_t rp_seed = 7,
                            double rp_amplitude = 0.05) {
  for (auto& e : zoo(rp_seed, rp_amplitude))
    if (e.name == name) return e;
  throw std::invalid_argument("unknown manifold: " + name);
}

}  // namespace grs
