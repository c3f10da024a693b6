#pragma once

// Truncated multivariate Taylor arithmetic: degree <= 4 in 4 variables
// (70 coefficients). Seeding the coordinates as jets and evaluating a
// closed-form metric through this arithmetic yields all partial derivatives
// up to fourth order exactly to roundoff; this is the "analytic partials"
// derivative policy. The finite-difference policy fills the same coefficient
// array from stencil estimates instead.
//
// Coefficients store f_alpha = D^alpha f / alpha!; products are truncated
// convolutions over multi-indices.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace grs {

class Jet {
 public:
  static constexpr int kVars = 4;
  static constexpr int kDeg = 4;
  static constexpr int kCoeffs = 70;

  Jet() { c_.fill(0.0); }
  explicit Jet(double v) {
    c_.fill(0.0);
    c_[0] = v;
  }
  static Jet variable(int i, double v) {
    Jet j(v);
    j.c_[tables().var_index[i]] = 1.0;
    return j;
  }

  double val() const { return c_[0]; }
  double& coeff(int k) { return c_[k]; }
  double coeff(int k) const { return c_[k]; }

  /// partial derivative value; pass each differentiation index once
  double d(int i) const { return deriv_coeff(count(i)); }
  double d(int i, int j) const {
    std::array<int, 4> m{};
    ++m[i];
    ++m[j];
    return deriv_coeff(m);
  }
  double d(int i, int j, int k) const {
    std::array<int, 4> m{};
    ++m[i];
    ++m[j];
    ++m[k];
    return deriv_coeff(m);
  }
  double d(int i, int j, int k, int l) const {
    std::array<int, 4> m{};
    ++m[i];
    ++m[j];
    ++m[k];
    ++m[l];
    return deriv_coeff(m);
  }

  /// jet of the i-th partial derivative (degree drops by one)
  Jet partial(int i) const {
    const Tables& t = tables();
    Jet out;
    for (int k = 0; k < kCoeffs; ++k) {
      int src = t.shift_up[k][i];  // index of multiindex + e_i, or -1
      if (src >= 0) out.c_[k] = c_[src] * (t.mi[src][i]);
    }
    return out;
  }

  Jet operator-() const {
    Jet o;
    for (int k = 0; k < kCoeffs; ++k) o.c_[k] = -c_[k];
    return o;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < kCoeffs; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < kCoeffs; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet& operator-=(double v) {
    c_[0] -= v;
    return *this;
  }
  Jet& operator*=(double v) {
    for (int k = 0; k < kCoeffs; ++k) c_[k] *= v;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return Jet(a) -= b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }

  /// product truncated to total degree maxdeg (full product: maxdeg = kDeg)
  static Jet mul(const Jet& a, const Jet& b, int maxdeg = kDeg) {
    const Tables& t = tables();
    Jet out;
    const int end = t.bucket_end[maxdeg];
    for (int e = 0; e < end; ++e) {
      const auto& p = t.prod[e];
      out.c_[p.out] += a.c_[p.a] * b.c_[p.b];
    }
    return out;
  }
  friend Jet operator*(const Jet& a, const Jet& b) { return mul(a, b); }

  /// composition with a univariate function given derivatives at val()
  Jet compose(const std::array<double, kDeg + 1>& derivs) const {
    static const double inv_fact[5] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
    Jet t = *this;
    t.c_[0] = 0.0;
    Jet out(derivs[kDeg] * inv_fact[kDeg]);
    for (int k = kDeg - 1; k >= 0; --k) {
      out = mul(out, t);
      out.c_[0] += derivs[k] * inv_fact[k];
    }
    return out;
  }

  Jet inv() const {
    double a = val();
    return compose({1 / a, -1 / (a * a), 2 / (a * a * a), -6 / (a * a * a * a),
                    24 / (a * a * a * a * a)});
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return mul(a, b.inv()); }
  friend Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }
  friend Jet operator/(double a, const Jet& b) { return a * b.inv(); }

  Jet sqrt() const {
    double a = std::sqrt(val());
    return compose({a, 0.5 / a, -0.25 / (a * a * a), 0.375 / (a * a * a * a * a),
                    -0.9375 / (a * a * a * a * a * a * a)});
  }
  Jet exp() const {
    double a = std::exp(val());
    return compose({a, a, a, a, a});
  }
  Jet log() const {
    double a = val();
    return compose({std::log(a), 1 / a, -1 / (a * a), 2 / (a * a * a), -6 / (a * a * a * a)});
  }
  Jet sin() const {
    double s = std::sin(val()), c = std::cos(val());
    return compose({s, c, -s, -c, s});
  }
  Jet cos() const {
    double s = std::sin(val()), c = std::cos(val());
    return compose({c, -s, -c, s, c});
  }

  struct Tables {
    std::array<std::array<int, 4>, kCoeffs> mi{};       // multi-indices
    std::array<int, 4> var_index{};                     // index of e_i
    std::array<std::array<int, 4>, kCoeffs> shift_up{}; // index of mi+e_i or -1
    struct Prod {
      std::uint8_t a, b, out;
    };
    std::vector<Prod> prod;            // sorted by deg(a)+deg(b)
    std::array<int, kDeg + 1> bucket_end{};  // prod entries with degsum <= d
  };

  static const Tables& tables() {
    static const Tables t = build_tables();
    return t;
  }

 private:
  static std::array<int, 4> count(int i) {
    std::array<int, 4> m{};
    ++m[i];
    return m;
  }
  double deriv_coeff(const std::array<int, 4>& m) const {
    const Tables& t = tables();
    double fact = 1.0;
    for (int i = 0; i < 4; ++i)
      for (int k = 2; k <= m[i]; ++k) fact *= k;
    for (int k = 0; k < kCoeffs; ++k)
      if (t.mi[k] == m) return c_[k] * fact;
    return 0.0;
  }
  static Tables build_tables() {
    Tables t;
    int n = 0;
    for (int total = 0; total <= kDeg; ++total)
      for (int a = total; a >= 0; --a)
        for (int b = total - a; b >= 0; --b)
          for (int c = total - a - b; c >= 0; --c) {
            t.mi[n] = {a, b, c, total - a - b - c};
            ++n;
          }
    auto find = [&](const std::array<int, 4>& m) {
      int tot = m[0] + m[1] + m[2] + m[3];
      if (tot > kDeg) return -1;
      for (int k = 0; k < kCoeffs; ++k)
        if (t.mi[k] == m) return k;
      return -1;
    };
    for (int i = 0; i < 4; ++i) {
      std::array<int, 4> m{};
      m[i] = 1;
      t.var_index[i] = find(m);
    }
    for (int k = 0; k < kCoeffs; ++k)
      for (int i = 0; i < 4; ++i) {
        std::array<int, 4> m = t.mi[k];
        ++m[i];
        t.shift_up[k][i] = find(m);
      }
    for (int dsum = 0; dsum <= kDeg; ++dsum) {
      for (int a = 0; a < kCoeffs; ++a)
        for (int b = 0; b < kCoeffs; ++b) {
          int da = 0, db = 0;
          for (int i = 0; i < 4; ++i) {
            da += t.mi[a][i];
            db += t.mi[b][i];
          }
          if (da + db != dsum) continue;
          std::array<int, 4> m;
          for (int i = 0; i < 4; ++i) m[i] = t.mi[a][i] + t.mi[b][i];
          int out = find(m);
          if (out >= 0)
            t.prod.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                              static_cast<std::uint8_t>(out)});
        }
      t.bucket_end[dsum] = static_cast<int>(t.prod.size());
    }
    return t;
  }

  std::array<double, kCoeffs> c_;
};

using JetVec4 = std::array<Jet, 4>;

inline JetVec4 seed_jets(const std::array<double, 4>& x) {
  return {Jet::variable(0, x[0]), Jet::variable(1, x[1]), Jet::variable(2, x[2]),
          Jet::variable(3, x[3])};
}

}  // namespace grs
