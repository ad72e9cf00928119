// Open book structure on the link: page embedding into the ambient sphere,
// momentum rescaling between the abstract torus and the disk-bundle page
// coordinates, the resulting coordinate map with its inverse, and the checks
// that the contact form is supported by the open book.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "openbook/brieskorn.hpp"
#include "openbook/cotangent.hpp"
#include "openbook/forms.hpp"
#include "openbook/profile.hpp"
#include "openbook/report.hpp"
#include "openbook/sampling.hpp"

namespace obk {

// A point of the open page in disk-bundle coordinates: angle t plus a
// cotangent point with |p| < 1.
struct PageCoordinates {
  double t = 0;
  CotangentPoint x;
};

namespace detail {

inline double binom(int k, int j) {
  if (j < 0 || j > k) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= j; ++i) b = b * (k - i + 1) / i;
  return b;
}

// F^2 and G^2 as functions of s = |p|^2, from
//   (1-s)^2 + s F^2 + G^2 = 2,   s F^2 - G^2 = -(1-s)^k.
// The direct quotient for F^2 loses roughly half the mantissa of its
// first derivative for small s (the numerator is O(s) with O(1) terms
// cancelling), so a truncated expansion takes over below s = 1e-3; the
// first omitted term is binom(k,7) s^6 / 2.
template <typename S>
S F_sq_series(int k, const S& s) {
  const double c0 = (2.0 + k) / 2;
  const double c1 = -(1.0 + binom(k, 2)) / 2;
  const double c2 = binom(k, 3) / 2;
  const double c3 = -binom(k, 4) / 2;
  const double c4 = binom(k, 5) / 2;
  const double c5 = -binom(k, 6) / 2;
  return c0 + s * (c1 + s * (c2 + s * (c3 + s * (c4 + s * c5))));
}

template <typename S>
S F_sq_direct(int k, const S& s) {
  const S om = S(1) - s;
  return (S(2) - om * om - ipow(om, k)) / (2 * s);
}

template <typename S>
S F_sq(int k, const S& s) {
  if (std::abs(value_of(s)) <= 1e-3) return F_sq_series(k, s);
  return F_sq_direct(k, s);
}

template <typename S>
S G_sq(int k, const S& s) {
  const S om = S(1) - s;
  return (S(2) - om * om + ipow(om, k)) / 2;
}

}  // namespace detail

inline double F_cap(int k, double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("F_cap: radius must lie in [0, 1)");
  return std::sqrt(detail::F_sq(k, r * r));
}

inline double G_cap(int k, double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("G_cap: radius must lie in [0, 1)");
  return std::sqrt(detail::G_sq(k, r * r));
}

// ---- page embedding -------------------------------------------------------

// Phi(t, q, p) = (e^{2 pi i t} (1 - |p|^2), e^{pi k i t} (F p + i G q)),
// interleaved real coordinates. Smooth across p = 0 because F, G depend on
// s = |p|^2 only.
namespace detail {

template <typename S>
VecX<S> phi_embed_raw(const BrieskornParams& pm, const VecX<S>& tx) {
  const int n = pm.n;
  check_dim(static_cast<int>(tx.size()), 2 * n + 1, "phi_embed");
  const S t = tx[0];
  const S s = squared_norm<S>(VecX<S>(tx.tail(n)));
  if (value_of(s) >= 1.0)
    throw std::domain_error("phi_embed: |p| must be < 1");
  const S F = sqrt(F_sq(pm.k, s));
  const S G = sqrt(G_sq(pm.k, s));
  const S a0 = (2 * std::numbers::pi) * t;
  const S rim = S(1) - s;
  const S ar = (std::numbers::pi * pm.k) * t;
  const S cr = cos(ar);
  const S sr = sin(ar);
  VecX<S> z(2 * n + 2);
  z[0] = cos(a0) * rim;
  z[1] = sin(a0) * rim;
  for (int j = 0; j < n; ++j) {
    const S a = F * tx[1 + n + j];
    const S b = G * tx[1 + j];
    z[2 + 2 * j] = cr * a - sr * b;
    z[3 + 2 * j] = sr * a + cr * b;
  }
  return z;
}

}  // namespace detail

inline AmbientPoint phi_embed(const BrieskornParams& pm, double t,
                              const CotangentPoint& pt) {
  if (pt.n() != pm.n)
    throw std::invalid_argument("phi_embed: cotangent dimension mismatch");
  VecXd tx(2 * pm.n + 1);
  tx << t, pt.q, pt.p;
  return AmbientPoint{detail::phi_embed_raw<double>(pm, tx)};
}

inline SmoothMap phi_embed_map(const BrieskornParams& pm) {
  return make_smooth_map(2 * pm.n + 1, 2 * pm.n + 2, [pm](const auto& x) {
    return detail::phi_embed_raw(pm, x);
  });
}

// ---- momentum rescaling ---------------------------------------------------

// The radius map the rescaling inverts: u(r) = r F(r) G(r) / (k pi),
// strictly increasing from 0 onto [0, 1/(k pi)).
template <typename S>
S page_momentum_ratio(const TwistProfile& pr, const S& r) {
  const S s = r * r;
  return r * sqrt(detail::F_sq(pr.k, s) * detail::G_sq(pr.k, s)) / pr.kpi();
}

namespace detail {

// (t, q, p) -> (t, q, g(|p|)/|p| p) with h_aux(g(r)) = u(r). Where
// u(r) <= 1/c_k the auxiliary profile is the identity and g/|p| has the
// closed smooth form F G / (k pi); this branch covers p = 0.
template <typename S>
VecX<S> s_rescale_raw(const TwistProfile& pr, const VecX<S>& tx) {
  const int n = static_cast<int>(tx.size() - 1) / 2;
  const S s = squared_norm<S>(VecX<S>(tx.tail(n)));
  if (value_of(s) >= 1.0)
    throw std::domain_error("s_rescale: |p| must be < 1");
  const S fg = F_sq(pr.k, s) * G_sq(pr.k, s);
  const double seam = pr.transition_lo() * pr.kpi();
  S ratio;
  if (value_of(s) * value_of(fg) <= seam * seam) {
    ratio = sqrt(fg) / pr.kpi();
  } else {
    const S r = sqrt(s);
    const S g = h_aux_inverse(pr, r * sqrt(fg) / pr.kpi());
    ratio = g / r;
  }
  VecX<S> out = tx;
  out.tail(n) = ratio * tx.tail(n);
  return out;
}

template <typename S>
VecX<S> s_rescale_inverse_raw(const TwistProfile& pr, const VecX<S>& tx) {
  const int n = static_cast<int>(tx.size() - 1) / 2;
  const S m = squared_norm<S>(VecX<S>(tx.tail(n)));
  if (value_of(m) == 0.0) return tx;  // p = 0 is fixed
  const S normp = sqrt(m);
  const S target = h_aux(pr, normp);
  const int k = pr.k;
  const double kpi = pr.kpi();
  const S r = invert_increasing(
      [k, kpi](const auto& rr) {
        const auto ss = rr * rr;
        return rr * sqrt(F_sq(k, ss) * G_sq(k, ss)) / kpi;
      },
      target, 0.0, 1.0 - 1e-13);
  VecX<S> out = tx;
  out.tail(n) = (r / normp) * tx.tail(n);
  return out;
}

}  // namespace detail

inline TorusPoint s_rescale(const TwistProfile& pr,
                            const PageCoordinates& pc) {
  VecXd tx(2 * pc.x.n() + 1);
  tx << pc.t, pc.x.q, pc.x.p;
  return unpack_torus(detail::s_rescale_raw<double>(pr, tx), TorusModel::M);
}

inline PageCoordinates s_rescale_inverse(const TwistProfile& pr,
                                         const TorusPoint& tp) {
  const VecXd out = detail::s_rescale_inverse_raw<double>(pr, pack_torus(tp));
  const int n = tp.x.n();
  return PageCoordinates{out[0],
                         CotangentPoint{out.segment(1, n), out.tail(n)}};
}

inline SmoothMap s_rescale_map(const TwistProfile& pr, int n) {
  return make_smooth_map(2 * n + 1, 2 * n + 1, [pr](const auto& x) {
    return detail::s_rescale_raw(pr, x);
  });
}

inline SmoothMap s_rescale_inverse_map(const TwistProfile& pr, int n) {
  return make_smooth_map(2 * n + 1, 2 * n + 1, [pr](const auto& x) {
    return detail::s_rescale_inverse_raw(pr, x);
  });
}

// ---- open book coordinate map ---------------------------------------------

// C = Phi o S^{-1} o Psi^{-1}: the twist torus of the full cotangent bundle
// onto the complement of the binding.
namespace detail {

template <typename S>
VecX<S> c_map_raw(const BrieskornParams& pm, const TwistProfile& pr,
                  const VecX<S>& tx) {
  return phi_embed_raw(
      pm, s_rescale_inverse_raw(pr, momentum_frame_rotation(pr, tx, -1.0)));
}

template <typename S>
VecX<S> c_map_inverse_raw(const BrieskornParams& pm, const TwistProfile& pr,
                          const VecX<S>& z) {
  const int n = pm.n;
  check_dim(static_cast<int>(z.size()), 2 * n + 2, "c_map_inverse");
  const S hyp = sqrt(z[0] * z[0] + z[1] * z[1]);
  if (value_of(hyp) <= 1e-10)
    throw BindingError("c_map_inverse: point lies on the binding (z_0 = 0)");
  if (value_of(hyp) >= 1.0 + 1e-12)
    throw std::domain_error(
        "c_map_inverse: |z_0| exceeds 1, outside the page region");
  S t = atan2(z[1], z[0]) / (2 * std::numbers::pi);
  if (value_of(t) < 0) t = t + 1.0;
  const S s = S(1) - hyp;
  const S F = sqrt(F_sq(pm.k, s));
  const S G = sqrt(G_sq(pm.k, s));
  const S ar = (std::numbers::pi * pm.k) * t;
  const S cr = cos(ar);
  const S sr = sin(ar);
  VecX<S> page(2 * n + 1);
  page[0] = t;
  for (int j = 0; j < n; ++j) {
    const S wre = z[2 + 2 * j];
    const S wim = z[3 + 2 * j];
    page[1 + n + j] = (cr * wre + sr * wim) / F;
    page[1 + j] = (cr * wim - sr * wre) / G;
  }
  return momentum_frame_rotation(pr, s_rescale_raw(pr, page), 1.0);
}

}  // namespace detail

inline AmbientPoint c_map(const BrieskornParams& pm, const TwistProfile& pr,
                          const TorusPoint& tp) {
  if (tp.model != TorusModel::Twist)
    throw std::invalid_argument("c_map: expected a twist-model torus point");
  return AmbientPoint{detail::c_map_raw<double>(pm, pr, pack_torus(tp))};
}

inline TorusPoint c_map_inverse(const BrieskornParams& pm,
                                const TwistProfile& pr, const AmbientPoint& z,
                                double* drift = nullptr) {
  const VecXd out = detail::c_map_inverse_raw<double>(pm, pr, z.zr);
  TorusPoint tp = unpack_torus(out, TorusModel::Twist);
  if (tp.x.residual() > 1e-12) {
    const double corr = tp.x.project();
    if (drift) *drift = std::max(*drift, corr);
  }
  return tp;
}

inline SmoothMap c_map_as_smooth(const BrieskornParams& pm,
                                 const TwistProfile& pr) {
  return make_smooth_map(2 * pm.n + 1, 2 * pm.n + 2, [pm, pr](const auto& x) {
    return detail::c_map_raw(pm, pr, x);
  });
}

inline SmoothMap c_map_inverse_as_smooth(const BrieskornParams& pm,
                                         const TwistProfile& pr) {
  return make_smooth_map(2 * pm.n + 2, 2 * pm.n + 1, [pm, pr](const auto& x) {
    return detail::c_map_inverse_raw(pm, pr, x);
  });
}

// ---- supported open book checks -------------------------------------------

// Sampled page point with the momentum magnitude stratified across the
// profile transition bands, capped at `top` < 1.
inline PageCoordinates sample_page_point(std::mt19937_64& rng,
                                         const TwistProfile& pr, int n,
                                         double top) {
  PageCoordinates pc;
  pc.t = uniform_in(rng, 0.0, 1.0);
  pc.x = sample_cotangent_stratified(rng, pr, n, top);
  return pc;
}

// The restriction of the contact form to the binding is a (positive or
// negative) volume form, with one sign across samples.
inline CheckResult check_binding_contact(const BrieskornParams& pm,
                                         int samples, std::uint64_t seed) {
  auto rng = make_rng(seed, {0x62696e64u});
  const OneForm alpha = alpha_k(pm);
  const ConstraintManifold mfd = binding_manifold(pm);
  double err = 0.0;
  double ref = 0.0;
  for (int i = 0; i < samples; ++i) {
    const AmbientPoint z = sample_binding(pm, rng);
    const double v = contact_volume(alpha, mfd, z.zr);
    if (i == 0) ref = v >= 0 ? 1.0 : -1.0;
    err = std::max(err, std::max(0.0, 1e-12 - ref * v));
  }
  return make_result("binding_contact", samples, err, 0.0);
}

// d(alpha) restricted to a page is nondegenerate: the Gram matrix of the
// two-form on an orthonormal tangent basis has determinant bounded away
// from zero (the determinant of a skew form is its Pfaffian squared).
inline CheckResult check_page_symplectic(const BrieskornParams& pm,
                                         const TwistProfile& pr, int samples,
                                         std::uint64_t seed) {
  auto rng = make_rng(seed, {0x70616765u});
  const OneForm alpha = alpha_k(pm);
  double min_det = std::numeric_limits<double>::infinity();
  const double pages[2] = {0.0, 1.0 / 12.0};
  for (int half = 0; half < 2; ++half) {
    const double t0 = pages[half];
    const ConstraintManifold mfd = page_manifold(pm, t0);
    const MatXd A = exterior_derivative(alpha).a0(VecXd::Zero(2 * pm.n + 2));
    for (int i = 0; i < (samples + 1) / 2; ++i) {
      const CotangentPoint pt = sample_cotangent_stratified(rng, pr, pm.n, 0.97);
      const AmbientPoint z = phi_embed(pm, t0, pt);
      const MatXd B = tangent_basis(mfd, z.zr);
      const MatXd gram = B.transpose() * A * B;
      min_det = std::min(min_det, gram.determinant());
    }
  }
  const double err = std::max(0.0, 1e-6 - min_det);
  return make_result("page_symplectic", samples, err, 0.0);
}

// With nu = p d/dp the Liouville field of lambda_can, the orientation the
// fibration induces on a momentum sphere bundle agrees with the contact
// orientation; concretely iota_nu (d lambda)^{n-1} = (n-1) lambda ^
// (d lambda)^{n-2} on the bundle, with both sides nonvanishing.
inline CheckResult check_orientation_match(const BrieskornParams& pm,
                                           int samples, std::uint64_t seed) {
  auto rng = make_rng(seed, {0x6f72696eu});
  const int n = pm.n;
  const DifferentialForm lam = as_form(lambda_can(n));
  const DifferentialForm dlam = as_form(exterior_derivative(lambda_can(n)));
  double err = 0.0;
  const double radii[3] = {0.2, 0.5, 0.9};
  for (double c : radii) {
    const ConstraintManifold mfd = sphere_bundle_manifold(n, c);
    for (int i = 0; i < (samples + 2) / 3; ++i) {
      const CotangentPoint pt = sample_cotangent_point(rng, n, c);
      const VecXd x = pack_cotangent(pt);
      const MatXd B = tangent_basis(mfd, x);
      VecXd nu = VecXd::Zero(2 * n);
      nu.tail(n) = pt.p;
      std::vector<VecXd> lhs_vs;
      lhs_vs.push_back(nu);
      for (int j = 0; j < B.cols(); ++j) lhs_vs.push_back(B.col(j));
      std::vector<VecXd> rhs_vs(lhs_vs.begin() + 1, lhs_vs.end());
      const std::vector<DifferentialForm> lhs_f(n - 1, dlam);
      std::vector<DifferentialForm> rhs_f;
      rhs_f.push_back(lam);
      for (int j = 0; j < n - 2; ++j) rhs_f.push_back(dlam);
      const double lhs = wedge_eval(lhs_f, x, lhs_vs);
      const double rhs = wedge_eval(rhs_f, x, rhs_vs);
      err = std::max(err, std::abs(lhs - (n - 1) * rhs));
      err = std::max(err, std::max(0.0, 1e-12 - std::abs(rhs)));
    }
  }
  return make_result("orientation_match", samples, err, 1e-8);
}

// The image of {t0} x S_c under the coordinate map has a single z_0 value:
// fibers of the rescaled angle fibration sit over points of the base circle.
inline CheckResult check_fiber_z0_constant(const BrieskornParams& pm,
                                           const TwistProfile& pr,
                                           int samples, std::uint64_t seed) {
  auto rng = make_rng(seed, {0x66696272u});
  const double t0 = 0.3;
  const double c = 0.5;
  double err = 0.0;
  double z0x = 0.0, z0y = 0.0;
  for (int i = 0; i < samples; ++i) {
    const CotangentPoint pt = sample_cotangent_point(rng, pm.n, c);
    const AmbientPoint z = c_map(pm, pr, TorusPoint{t0, pt, TorusModel::Twist});
    if (i == 0) {
      z0x = z.zr[0];
      z0y = z.zr[1];
    } else {
      err = std::max(err, std::hypot(z.zr[0] - z0x, z.zr[1] - z0y));
    }
  }
  return make_result("fiber_z0_constant", samples, err, 1e-9);
}

// The four conditions for the contact form to be supported by the open book,
// bundled as a report.
inline CheckReport verify_supporting(const BrieskornParams& pm,
                                     const TwistProfile& pr, int samples,
                                     std::uint64_t seed) {
  CheckReport rep;
  rep.n = pm.n;
  rep.k = pm.k;
  rep.seed = seed;
  rep.add(check_binding_contact(pm, samples, seed));
  rep.add(check_page_symplectic(pm, pr, samples, seed));
  rep.add(check_orientation_match(pm, samples, seed));
  rep.add(check_fiber_z0_constant(pm, pr, samples, seed));
  return rep;
}

}  // namespace obk
