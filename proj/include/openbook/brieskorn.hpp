// The link W_k^{2n-1} of z_0^k + z_1^2 + ... + z_n^2 in the sphere of
// radius sqrt(2), its contact form alpha_k, the circle coordinate theta,
// the R- and SO(n)-actions, the binding {z_0 = 0}, and the two explicit
// normal-bundle bases along the binding.
//
// Ambient coordinates are 2(n+1) reals interleaved as (x_0, y_0, x_1, y_1,
// ...); complex component j lives at slots (2j, 2j+1).
#pragma once

#include <complex>
#include <utility>

#include "openbook/forms.hpp"
#include "openbook/sampling.hpp"
#include "openbook/types.hpp"

namespace obk {

struct BrieskornParams {
  int n = 2;
  int k = 1;

  BrieskornParams(int n_, int k_) : n(n_), k(k_) {
    if (n < 2 || n > 4)
      throw std::invalid_argument(
          "BrieskornParams: n must lie in [2, 4] (top-degree wedge budget)");
    if (k < 1) throw std::invalid_argument("BrieskornParams: k must be >= 1");
  }

  int ambient_dim() const { return 2 * (n + 1); }
  int manifold_dim() const { return 2 * n - 1; }
};

struct AmbientPoint {
  VecXd zr;  // interleaved reals

  int n() const { return static_cast<int>(zr.size()) / 2 - 1; }
  std::complex<double> z(int j) const { return {zr[2 * j], zr[2 * j + 1]}; }
  void set_z(int j, std::complex<double> w) {
    zr[2 * j] = w.real();
    zr[2 * j + 1] = w.imag();
  }
};

namespace detail {

// Complex square and integer power on (re, im) pairs at any scalar level.
template <typename S>
void cplx_mul(const S& ar, const S& ai, const S& br, const S& bi, S& cr,
              S& ci) {
  cr = ar * br - ai * bi;
  ci = ar * bi + ai * br;
}

template <typename S>
void cplx_pow(S re, S im, int k, S& outr, S& outi) {
  S rr = S(1), ri = S(0);
  while (k > 0) {
    if (k & 1) {
      S tr, ti;
      cplx_mul(rr, ri, re, im, tr, ti);
      rr = tr;
      ri = ti;
    }
    S sr, si;
    cplx_mul(re, im, re, im, sr, si);
    re = sr;
    im = si;
    k >>= 1;
  }
  outr = rr;
  outi = ri;
}

// f(z) = z_0^k + sum_{j>=1} z_j^2 on interleaved coordinates.
template <typename S>
void poly_f_raw(int n, int k, const VecX<S>& zr, S& fre, S& fim) {
  cplx_pow(zr[0], zr[1], k, fre, fim);
  for (int j = 1; j <= n; ++j) {
    const S x = zr[2 * j];
    const S y = zr[2 * j + 1];
    fre += x * x - y * y;
    fim += 2.0 * x * y;
  }
}

}  // namespace detail

inline std::complex<double> poly_f(const BrieskornParams& pm,
                                   const AmbientPoint& z) {
  double re, im;
  detail::poly_f_raw<double>(pm.n, pm.k, z.zr, re, im);
  return {re, im};
}

// Same value through a different computation: the tail as
// |x|^2 - |y|^2 + 2i<x,y> over the last n components, z_0^k in polar form.
inline std::complex<double> poly_f_realform(const BrieskornParams& pm,
                                            const AmbientPoint& z) {
  double nx = 0, ny = 0, xy = 0;
  for (int j = 1; j <= pm.n; ++j) {
    const double x = z.zr[2 * j];
    const double y = z.zr[2 * j + 1];
    nx += x * x;
    ny += y * y;
    xy += x * y;
  }
  const double r0 = std::hypot(z.zr[0], z.zr[1]);
  const double a0 = std::atan2(z.zr[1], z.zr[0]);
  const std::complex<double> head =
      r0 == 0.0 ? std::complex<double>(0, 0)
                : std::polar(std::pow(r0, pm.k), pm.k * a0);
  return head + std::complex<double>(nx - ny, 2 * xy);
}

// (|f(z)|, | |z|^2 - 2 |): the two on-manifold residuals.
inline std::pair<double, double> defect(const BrieskornParams& pm,
                                        const AmbientPoint& z) {
  return {std::abs(poly_f(pm, z)), std::abs(z.zr.squaredNorm() - 2.0)};
}

// alpha_k = k (x_0 dy_0 - y_0 dx_0) + 2 sum_{j>=1} (x_j dy_j - y_j dx_j).
inline OneForm alpha_k(const BrieskornParams& pm) {
  const int n = pm.n;
  const int k = pm.k;
  return make_one_form(pm.ambient_dim(), [n, k](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> a(2 * (n + 1));
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0) ? double(k) : 2.0;
      a[2 * j] = -w * x[2 * j + 1];
      a[2 * j + 1] = w * x[2 * j];
    }
    return a;
  });
}

// Circle coordinate z_0/|z_0|; undefined on the binding.
inline std::complex<double> theta(const AmbientPoint& z) {
  const std::complex<double> z0 = z.z(0);
  const double r = std::abs(z0);
  if (r <= 1e-12)
    throw SingularOrbitError("theta: point lies on the binding (z_0 = 0)");
  return z0 / r;
}

namespace detail {

template <typename S>
VecX<S> r_action_raw(int n, int k, double t, const VecX<S>& zr) {
  VecX<S> out(zr.size());
  const double c0 = std::cos(t), s0 = std::sin(t);
  const double ch = std::cos(0.5 * k * t), sh = std::sin(0.5 * k * t);
  out[0] = c0 * zr[0] - s0 * zr[1];
  out[1] = s0 * zr[0] + c0 * zr[1];
  for (int j = 1; j <= n; ++j) {
    out[2 * j] = ch * zr[2 * j] - sh * zr[2 * j + 1];
    out[2 * j + 1] = sh * zr[2 * j] + ch * zr[2 * j + 1];
  }
  return out;
}

}  // namespace detail

// e^{it}.(z_0, ..., z_n) = (e^{it} z_0, e^{ikt/2} z_1, ..., e^{ikt/2} z_n).
inline AmbientPoint r_action(const BrieskornParams& pm, double t,
                             const AmbientPoint& z) {
  return AmbientPoint{detail::r_action_raw<double>(pm.n, pm.k, t, z.zr)};
}

inline SmoothMap r_action_map(const BrieskornParams& pm, double t) {
  const int n = pm.n, k = pm.k, d = pm.ambient_dim();
  return make_smooth_map(d, d, [n, k, t](const auto& x) {
    return detail::r_action_raw(n, k, t, x);
  });
}

// A.(z_0, z_rest) = (z_0, A z_rest) for A in SO(n), acting componentwise
// on real and imaginary parts.
inline AmbientPoint so_n_action(const BrieskornParams& pm, const MatXd& A,
                                const AmbientPoint& z) {
  if (A.rows() != pm.n || A.cols() != pm.n)
    throw std::invalid_argument("so_n_action: matrix size mismatch");
  if ((A.transpose() * A - MatXd::Identity(pm.n, pm.n)).cwiseAbs().maxCoeff() >
      1e-10)
    throw std::invalid_argument("so_n_action: matrix is not orthogonal");
  AmbientPoint out{VecXd(z.zr.size())};
  out.zr[0] = z.zr[0];
  out.zr[1] = z.zr[1];
  VecXd xs(pm.n), ys(pm.n);
  for (int j = 1; j <= pm.n; ++j) {
    xs[j - 1] = z.zr[2 * j];
    ys[j - 1] = z.zr[2 * j + 1];
  }
  const VecXd xr = A * xs;
  const VecXd yr = A * ys;
  for (int j = 1; j <= pm.n; ++j) {
    out.zr[2 * j] = xr[j - 1];
    out.zr[2 * j + 1] = yr[j - 1];
  }
  return out;
}

inline SmoothMap so_n_action_map(const BrieskornParams& pm, const MatXd& A) {
  const int n = pm.n, d = pm.ambient_dim();
  return make_smooth_map(d, d, [n, A](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> out(x.size());
    out[0] = x[0];
    out[1] = x[1];
    for (int j = 1; j <= n; ++j) {
      S accx(0), accy(0);
      for (int l = 1; l <= n; ++l) {
        accx += A(j - 1, l - 1) * x[2 * l];
        accy += A(j - 1, l - 1) * x[2 * l + 1];
      }
      out[2 * j] = accx;
      out[2 * j + 1] = accy;
    }
    return out;
  });
}

// Random binding point (0, u + iv) with (u, v) orthonormal in R^n; the
// SO(n)-orbit description of B.
inline AmbientPoint sample_binding(const BrieskornParams& pm,
                                   std::mt19937_64& rng) {
  auto [u, v] = random_orthonormal_pair(rng, pm.n);
  AmbientPoint z{VecXd::Zero(pm.ambient_dim())};
  for (int j = 1; j <= pm.n; ++j) {
    z.zr[2 * j] = u[j - 1];
    z.zr[2 * j + 1] = v[j - 1];
  }
  return z;
}

inline AmbientPoint sample_binding(const BrieskornParams& pm,
                                   std::uint64_t seed) {
  auto rng = make_rng(seed, {0x62696e64ULL});
  return sample_binding(pm, rng);
}

// The two explicit normal-bundle vectors along the binding. For k != 1
// they span the z_0 plane; for k = 1 they tilt into the other components
// to stay tangent to W (the z_0-derivative of f no longer vanishes).
inline std::pair<VecXd, VecXd> binding_normal_basis(const BrieskornParams& pm,
                                                    const AmbientPoint& z) {
  const auto [df, dr] = defect(pm, z);
  const double r0 = std::hypot(z.zr[0], z.zr[1]);
  if (df > 1e-9 || dr > 1e-9 || r0 > 1e-10)
    throw BindingError("binding_normal_basis: point is not on the binding");
  const int d = pm.ambient_dim();
  VecXd e1 = VecXd::Zero(d), e2 = VecXd::Zero(d);
  if (pm.k != 1) {
    const double c = 1.0 / std::sqrt(2.0 * pm.k);
    e1[0] = c;  // c * d/dx_0
    e2[1] = c;  // c * d/dy_0
    return {e1, e2};
  }
  const double c = std::sqrt(2.0 / 5.0);
  e1[0] = c;
  e2[1] = c;
  for (int j = 1; j <= pm.n; ++j) {
    // component -conj(z_j)/4 of e1; e2 = i * e1 componentwise.
    const double re = -z.zr[2 * j] / 4.0;
    const double im = z.zr[2 * j + 1] / 4.0;
    e1[2 * j] = c * re;
    e1[2 * j + 1] = c * im;
    e2[2 * j] = -c * im;
    e2[2 * j + 1] = c * re;
  }
  return {e1, e2};
}

// ---- constraint manifolds -------------------------------------------------

namespace detail {

inline SmoothMap poly_re_constraint(const BrieskornParams& pm) {
  const int n = pm.n, k = pm.k, d = pm.ambient_dim();
  return make_smooth_map(d, 1, [n, k](const auto& zr) {
    using S = std::decay_t<decltype(zr[0])>;
    S re, im;
    poly_f_raw<S>(n, k, zr, re, im);
    VecX<S> out(1);
    out[0] = re;
    return out;
  });
}

inline SmoothMap poly_im_constraint(const BrieskornParams& pm) {
  const int n = pm.n, k = pm.k, d = pm.ambient_dim();
  return make_smooth_map(d, 1, [n, k](const auto& zr) {
    using S = std::decay_t<decltype(zr[0])>;
    S re, im;
    poly_f_raw<S>(n, k, zr, re, im);
    VecX<S> out(1);
    out[0] = im;
    return out;
  });
}

inline SmoothMap sphere_constraint(const BrieskornParams& pm) {
  const int d = pm.ambient_dim();
  return make_smooth_map(d, 1, [](const auto& zr) {
    using S = std::decay_t<decltype(zr[0])>;
    VecX<S> out(1);
    out[0] = squared_norm<S>(zr) - 2.0;
    return out;
  });
}

inline SmoothMap coordinate_constraint(int dim, int idx) {
  return make_smooth_map(dim, 1, [idx](const auto& zr) {
    using S = std::decay_t<decltype(zr[0])>;
    VecX<S> out(1);
    out[0] = zr[idx];
    return out;
  });
}

}  // namespace detail

// W_k^{2n-1} = {f = 0} intersected with the radius-sqrt(2) sphere.
inline ConstraintManifold w_manifold(const BrieskornParams& pm) {
  ConstraintManifold m;
  m.ambient_dim = pm.ambient_dim();
  m.constraints.push_back(detail::poly_re_constraint(pm));
  m.constraints.push_back(detail::poly_im_constraint(pm));
  m.constraints.push_back(detail::sphere_constraint(pm));
  return m;
}

// The binding B = W intersected with {z_0 = 0}.
inline ConstraintManifold binding_manifold(const BrieskornParams& pm) {
  ConstraintManifold m = w_manifold(pm);
  m.constraints.push_back(detail::coordinate_constraint(pm.ambient_dim(), 0));
  m.constraints.push_back(detail::coordinate_constraint(pm.ambient_dim(), 1));
  return m;
}

// The page over e^{2 pi i t0}: W with the linear condition
// Im(e^{-2 pi i t0} z_0) = 0 (the open half Re > 0 is not encoded).
inline ConstraintManifold page_manifold(const BrieskornParams& pm,
                                        double t0) {
  ConstraintManifold m = w_manifold(pm);
  const double c = std::cos(2 * M_PI * t0), s = std::sin(2 * M_PI * t0);
  m.constraints.push_back(
      make_smooth_map(pm.ambient_dim(), 1, [c, s](const auto& zr) {
        using S = std::decay_t<decltype(zr[0])>;
        VecX<S> out(1);
        out[0] = c * zr[1] - s * zr[0];  // Im(e^{-i arg} z_0)
        return out;
      }));
  return m;
}

}  // namespace obk
