// Fixed-order Gauss-Legendre quadrature.
//
// Nodes and weights for the 64-point rule are generated once by Newton
// iteration on the three-term Legendre recurrence and cached. The rule is
// exact for polynomials up to degree 127, far beyond what the smooth
// integrands here need for full double accuracy on a single panel.
#pragma once

#include <array>
#include <cmath>

namespace obk {

struct GaussLegendre64 {
  std::array<double, 64> node;
  std::array<double, 64> weight;
};

inline const GaussLegendre64& gauss_legendre_64() {
  static const GaussLegendre64 rule = [] {
    constexpr int n = 64;
    GaussLegendre64 r{};
    for (int i = 0; i < n / 2; ++i) {
      // Chebyshev-based initial guess for the i-th positive root.
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      r.node[i] = -x;
      r.weight[i] = w;
      r.node[n - 1 - i] = x;
      r.weight[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

// Integrate f over [a, b] with the 64-point rule. The endpoints may be
// dual-valued; derivatives flow through both the affine map and the
// fundamental-theorem boundary terms automatically.
template <typename S, typename F>
S integrate_gl64(F&& f, const S& a, const S& b) {
  const auto& rule = gauss_legendre_64();
  const S half = (b - a) * 0.5;
  const S mid = (a + b) * 0.5;
  S acc(0);
  for (int i = 0; i < 64; ++i) {
    acc += rule.weight[i] * f(mid + half * rule.node[i]);
  }
  return half * acc;
}

}  // namespace obk
