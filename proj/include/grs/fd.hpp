#pragma once

// Finite-difference stencils: Fornberg weights on symmetric integer nodes and
// the grid-based construction of metric jets for the FD derivative policy.
// For accuracy order p (even) and derivative order m the stencil uses
// 2*floor((m-1)/2) + 1 + p nodes, so every derivative entering an identity
// carries the same truncation order h^p.

#include <stdexcept>
#include <vector>

#include "grs/jet.hpp"

namespace grs {

/// Fornberg finite-difference weights for derivative order m at 0 on the
/// given nodes; returns weights[i] per node.
inline std::vector<double> fornberg_weights(int m, const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  // c[k][j]: weight of node j for derivative order k
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = nodes[i];
    for (int j = 0; j < i; ++j) {
      double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c[m];
}

/// centered stencil radius for derivative m at accuracy order p
inline int stencil_radius(int m, int p) { return (m - 1) / 2 + p / 2; }

/// per-axis weight vectors (indexed by offset + radius) for orders 0..4
struct StencilSet {
  int radius = 0;
  double weights[5][16] = {};  // weights[m][offset + radius] / h^m

  static StencilSet build(int order_p, double h) {
    StencilSet s;
    s.radius = stencil_radius(4, order_p);
    if (2 * s.radius + 1 > 16) throw std::invalid_argument("stencil too wide");
    for (int m = 0; m <= 4; ++m) {
      int rm = (m == 0) ? 0 : stencil_radius(m, order_p);
      std::vector<double> nodes;
      for (int k = -rm; k <= rm; ++k) nodes.push_back(k);
      std::vector<double> w = fornberg_weights(m, nodes);
      double hm = 1.0;
      for (int k = 0; k < m; ++k) hm *= h;
      for (int k = -rm; k <= rm; ++k) s.weights[m][k + s.radius] = w[k + rm] / hm;
    }
    return s;
  }
};

/// Fill jet coefficients (D^alpha f / alpha!) of several scalar fields from
/// their values on the tensor grid around x. Values callback: fills an array
/// of nf doubles at a grid point.
template <class Values>
inline void fd_jets(const Values& values, const std::array<double, 4>& x, int order_p, double h,
                    int nf, Jet* out) {
  StencilSet s = StencilSet::build(order_p, h);
  const int r = s.radius, nside = 2 * r + 1;
  std::vector<double> grid(static_cast<size_t>(nside) * nside * nside * nside * nf);
  std::vector<double> buf(nf);
  for (int i0 = -r; i0 <= r; ++i0)
    for (int i1 = -r; i1 <= r; ++i1)
      for (int i2 = -r; i2 <= r; ++i2)
        for (int i3 = -r; i3 <= r; ++i3) {
          std::array<double, 4> p = {x[0] + i0 * h, x[1] + i1 * h, x[2] + i2 * h, x[3] + i3 * h};
          values(p, buf.data());
          size_t idx = (((static_cast<size_t>(i0 + r) * nside + (i1 + r)) * nside + (i2 + r)) *
                            nside +
                        (i3 + r)) *
                       nf;
          for (int f = 0; f < nf; ++f) grid[idx + f] = buf[f];
        }
  const auto& mi = Jet::tables().mi;
  for (int k = 0; k < Jet::kCoeffs; ++k) {
    const auto& m = mi[k];
    double fact = 1.0;
    for (int i = 0; i < 4; ++i)
      for (int q = 2; q <= m[i]; ++q) fact *= q;
    std::vector<double> acc(nf, 0.0);
    for (int i0 = -r; i0 <= r; ++i0) {
      double w0 = s.weights[m[0]][i0 + r];
      if (w0 == 0.0) continue;
      for (int i1 = -r; i1 <= r; ++i1) {
        double w1 = w0 * s.weights[m[1]][i1 + r];
        if (w1 == 0.0) continue;
        for (int i2 = -r; i2 <= r; ++i2) {
          double w2 = w1 * s.weights[m[2]][i2 + r];
          if (w2 == 0.0) continue;
          for (int i3 = -r; i3 <= r; ++i3) {
            double w3 = w2 * s.weights[m[3]][i3 + r];
            if (w3 == 0.0) continue;
            size_t idx = (((static_cast<size_t>(i0 + r) * nside + (i1 + r)) * nside + (i2 + r)) *
                              nside +
                          (i3 + r)) *
                         nf;
            for (int f = 0; f < nf; ++f) acc[f] += w3 * grid[idx + f];
          }
        }
      }
    }
    for (int f = 0; f < nf; ++f) out[f].coeff(k) = acc[f] / fact;
  }
}

}  // namespace grs
