// T*S^{n-1} and its mapping tori: the canonical 1-form, the k-fold Dehn
// twist, the gluing map phi_k, the contact form beta_k, and the
// straightening map Psi_k between the sign-flip torus and the twist torus.
//
// Cotangent coordinates are stacked as x = [q; p] in R^{2n}; torus
// coordinates as [t; q; p] in R^{1+2n}. The twist rotates the (q, p/|p|)
// frame by g_k = k*pi + f_k(|p|); since rotations in that plane compose
// additively and |p| is preserved, every integer power has the closed form
// sign * rotation by m*f_k(|p|), which is exact on the small-momentum
// region (the angle is a multiple of pi there, no division by |p|).
#pragma once

#include <cmath>
#include <utility>

#include "openbook/forms.hpp"
#include "openbook/profile.hpp"
#include "openbook/sampling.hpp"
#include "openbook/types.hpp"

namespace obk {

struct CotangentPoint {
  VecXd q;
  VecXd p;

  int n() const { return static_cast<int>(q.size()); }
  double momentum() const { return p.norm(); }
  double residual() const {
    return std::max(std::abs(q.norm() - 1.0), std::abs(q.dot(p)));
  }
  // Re-projection onto {|q| = 1, q.p = 0}; returns the correction size.
  double project() {
    const VecXd q0 = q;
    const VecXd p0 = p;
    q.normalize();
    p -= q.dot(p) * q;
    return std::max((q - q0).norm(), (p - p0).norm());
  }
};

enum class TorusModel { M, Twist, Glued };

inline const char* torus_model_name(TorusModel m) {
  switch (m) {
    case TorusModel::M: return "M";
    case TorusModel::Twist: return "twist";
    default: return "glued";
  }
}

struct TorusPoint {
  double t = 0;
  CotangentPoint x;
  TorusModel model = TorusModel::Twist;
};

// ---- profile quantities as functions of s = |p|^2 -----------------------
// Branching on s keeps everything smooth at p = 0 (no square root of zero)
// and makes the flat regions exact.

namespace detail {

template <typename S>
S fk_of_sq(const TwistProfile& pr, const S& s) {
  const double lo = pr.transition_lo();
  const double hi = pr.transition_hi();
  if (value_of(s) <= lo * lo) return S(0);
  if (value_of(s) >= hi * hi) return S(pr.kpi());
  return pr.f_k_unchecked(sqrt(s));
}

template <typename S>
S fk_deriv_of_sq(const TwistProfile& pr, const S& s) {
  const double lo = pr.transition_lo();
  const double hi = pr.transition_hi();
  if (value_of(s) <= lo * lo || value_of(s) >= hi * hi) return S(0);
  return f_k_deriv(pr, sqrt(s));
}

template <typename S>
S hk_of_sq(const TwistProfile& pr, const S& s) {
  const double lo = pr.transition_lo();
  const double hi = pr.transition_hi();
  if (value_of(s) <= lo * lo) return S(1);
  if (value_of(s) >= hi * hi) return S(pr.h_k_tail());
  return h_k_eval(pr, sqrt(s));
}

template <typename S>
S integral_of_sq(const TwistProfile& pr, const S& s) {
  const double lo = pr.transition_lo();
  if (value_of(s) <= lo * lo) return S(0);
  return f_k_integral(pr, sqrt(s));
}

// tau_k^m on stacked coordinates, any scalar level.
template <typename S>
VecX<S> dehn_power_raw(const TwistProfile& pr, const VecX<S>& x, int m) {
  const int n = static_cast<int>(x.size()) / 2;
  VecX<S> q = x.head(n);
  VecX<S> p = x.tail(n);
  const bool flip = (pr.k * m) % 2 != 0;
  const S s = squared_norm<S>(p);
  VecX<S> out(2 * n);
  if (value_of(s) <= pr.transition_lo() * pr.transition_lo()) {
    out << q, p;
    return flip ? VecX<S>(-out) : out;
  }
  const S r = sqrt(s);
  const S ang = double(m) * pr.f_k_unchecked(r);
  const S c = cos(ang);
  const S sn = sin(ang);
  VecX<S> qn = c * q + (sn / r) * p;
  VecX<S> pn = c * p - (sn * r) * q;
  out << qn, pn;
  return flip ? VecX<S>(-out) : out;
}

// Rotation of the (q, p/|p|) frame by angle t*f_k(|p|); the Psi_k core.
template <typename S>
VecX<S> momentum_frame_rotation(const TwistProfile& pr, const VecX<S>& tx,
                                double direction) {
  const int n = static_cast<int>(tx.size() - 1) / 2;
  const S t = tx[0];
  VecX<S> q = tx.segment(1, n);
  VecX<S> p = tx.tail(n);
  const S s = squared_norm<S>(p);
  VecX<S> out(2 * n + 1);
  if (value_of(s) <= pr.transition_lo() * pr.transition_lo()) {
    out << t, q, p;
    return out;
  }
  const S r = sqrt(s);
  const S ang = direction * t * pr.f_k_unchecked(r);
  const S c = cos(ang);
  const S sn = sin(ang);
  VecX<S> qn = c * q + (sn / r) * p;
  VecX<S> pn = c * p - (sn * r) * q;
  out << t, qn, pn;
  return out;
}

}  // namespace detail

// ---- canonical forms ----------------------------------------------------

// lambda_can = sum p_i dq_i on R^{2n}.
inline OneForm lambda_can(int n) {
  return make_one_form(2 * n, [n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> a = VecX<S>::Zero(2 * n);
    a.head(n) = x.tail(n);
    return a;
  });
}

// beta_k = h_k(|p|) dt - t |p| d(f_k(|p|)) + lambda_can on R^{1+2n}.
// The dp-coefficient collapses to -t f_k'(|p|) p, smooth everywhere.
inline OneForm beta_k(const TwistProfile& pr, int n) {
  return make_one_form(2 * n + 1, [pr, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S t = x[0];
    VecX<S> p = x.tail(n);
    const S s = squared_norm<S>(p);
    VecX<S> a(2 * n + 1);
    a[0] = detail::hk_of_sq(pr, s);
    a.segment(1, n) = p;
    a.tail(n) = (S(-1) * t * detail::fk_deriv_of_sq(pr, s)) * p;
    return a;
  });
}

// The 1-form |p| d(f_k(|p|)) = f_k'(|p|) p . dp appearing in the twist
// transformation law.
inline OneForm momentum_twist_form(const TwistProfile& pr, int n) {
  return make_one_form(2 * n, [pr, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> p = x.tail(n);
    const S s = squared_norm<S>(p);
    VecX<S> a = VecX<S>::Zero(2 * n);
    a.tail(n) = detail::fk_deriv_of_sq(pr, s) * p;
    return a;
  });
}

// dt + lambda_can on R^{1+2n}.
inline OneForm contact_form_cylinder(int n) {
  return make_one_form(2 * n + 1, [n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> a = VecX<S>::Zero(2 * n + 1);
    a[0] = S(1);
    a.segment(1, n) = x.tail(n);
    return a;
  });
}

// (1 + I(|p|)) dt + lambda_can, the straightened form on the sign-flip
// torus.
inline OneForm straightened_form(const TwistProfile& pr, int n) {
  return make_one_form(2 * n + 1, [pr, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> p = x.tail(n);
    const S s = squared_norm<S>(p);
    VecX<S> a = VecX<S>::Zero(2 * n + 1);
    a[0] = S(1) + detail::integral_of_sq(pr, s);
    a.segment(1, n) = p;
    return a;
  });
}

// ---- maps ---------------------------------------------------------------

inline CotangentPoint dehn_twist_power(const TwistProfile& pr,
                                       const CotangentPoint& pt, int m,
                                       double* drift = nullptr) {
  VecXd x(2 * pt.n());
  x << pt.q, pt.p;
  const VecXd y = detail::dehn_power_raw<double>(pr, x, m);
  CotangentPoint out{y.head(pt.n()), y.tail(pt.n())};
  if (out.residual() > 1e-12) {
    const double corr = out.project();
    if (drift) *drift = std::max(*drift, corr);
  }
  return out;
}

inline CotangentPoint dehn_twist(const TwistProfile& pr,
                                 const CotangentPoint& pt,
                                 double* drift = nullptr) {
  return dehn_twist_power(pr, pt, 1, drift);
}

inline CotangentPoint dehn_twist_inverse(const TwistProfile& pr,
                                         const CotangentPoint& pt,
                                         double* drift = nullptr) {
  return dehn_twist_power(pr, pt, -1, drift);
}

// phi_k: (t; q, p) -> (t + h_k(|p|); tau_k(q, p)).
inline std::pair<double, CotangentPoint> phi_k_glue(const TwistProfile& pr,
                                                    double t,
                                                    const CotangentPoint& pt) {
  const double h = h_k_eval(pr, pt.momentum());
  return {t + h, dehn_twist(pr, pt)};
}

// Psi_k: M_k -> twist torus, rotating the momentum frame by t*f_k(|p|).
inline TorusPoint psi_k(const TwistProfile& pr, double t,
                        const CotangentPoint& pt) {
  VecXd tx(2 * pt.n() + 1);
  tx << t, pt.q, pt.p;
  const VecXd out = detail::momentum_frame_rotation<double>(pr, tx, 1.0);
  const int n = pt.n();
  return TorusPoint{out[0], CotangentPoint{out.segment(1, n), out.tail(n)},
                    TorusModel::Twist};
}

inline std::pair<double, CotangentPoint> psi_k_inverse(const TwistProfile& pr,
                                                       const TorusPoint& tp) {
  VecXd tx(2 * tp.x.n() + 1);
  tx << tp.t, tp.x.q, tp.x.p;
  const VecXd out = detail::momentum_frame_rotation<double>(pr, tx, -1.0);
  const int n = tp.x.n();
  return {out[0], CotangentPoint{out.segment(1, n), out.tail(n)}};
}

// Representative with t in the fundamental domain, reached by inverse deck
// steps (deck maps move t upward). For the twist torus the relation is
// (t, x) ~ (t+1, tau_k x), so stepping t down by one applies tau_k^{-1};
// for the glued torus the t-period is h_k(|p|), which tau_k preserves.
inline TorusPoint normalize_torus_point(const TwistProfile& pr,
                                        const TorusPoint& tp) {
  TorusPoint out = tp;
  switch (tp.model) {
    case TorusModel::M: {
      const int steps = static_cast<int>(std::floor(tp.t));
      out.t = tp.t - steps;
      if (pr.k % 2 != 0 && steps % 2 != 0) {
        out.x.q = -out.x.q;
        out.x.p = -out.x.p;
      }
      break;
    }
    case TorusModel::Twist: {
      const int steps = static_cast<int>(std::floor(tp.t));
      out.t = tp.t - steps;
      if (steps != 0) out.x = dehn_twist_power(pr, tp.x, -steps);
      break;
    }
    case TorusModel::Glued: {
      const double h = h_k_eval(pr, tp.x.momentum());
      const int steps = static_cast<int>(std::floor(tp.t / h));
      out.t = tp.t - steps * h;
      if (steps != 0) out.x = dehn_twist_power(pr, tp.x, -steps);
      break;
    }
  }
  return out;
}

// ---- SmoothMap factories (raw coordinates, no re-projection) -------------

inline SmoothMap dehn_twist_map(const TwistProfile& pr, int n, int m = 1) {
  return make_smooth_map(2 * n, 2 * n, [pr, m](const auto& x) {
    return detail::dehn_power_raw(pr, x, m);
  });
}

inline SmoothMap psi_map(const TwistProfile& pr, int n) {
  return make_smooth_map(2 * n + 1, 2 * n + 1, [pr](const auto& x) {
    return detail::momentum_frame_rotation(pr, x, 1.0);
  });
}

inline SmoothMap psi_inverse_map(const TwistProfile& pr, int n) {
  return make_smooth_map(2 * n + 1, 2 * n + 1, [pr](const auto& x) {
    return detail::momentum_frame_rotation(pr, x, -1.0);
  });
}

// (t; q, p) -> (t + h_k(|p|); tau_k(q, p)).
inline SmoothMap glue_map(const TwistProfile& pr, int n) {
  return make_smooth_map(2 * n + 1, 2 * n + 1, [pr, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> qp = x.tail(2 * n);
    const S s = squared_norm<S>(VecX<S>(x.tail(n)));
    VecX<S> y(2 * n + 1);
    y[0] = x[0] + detail::hk_of_sq(pr, s);
    y.tail(2 * n) = detail::dehn_power_raw(pr, qp, 1);
    return y;
  });
}

// (t; q, p) -> (h_k(|p|) t; q, p), the reparametrization whose pullback of
// dt + lambda_can is beta_k.
inline SmoothMap reparam_map(const TwistProfile& pr, int n) {
  return make_smooth_map(2 * n + 1, 2 * n + 1, [pr, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S s = squared_norm<S>(VecX<S>(x.tail(n)));
    VecX<S> y = x;
    y[0] = x[0] * detail::hk_of_sq(pr, s);
    return y;
  });
}

// Deck transformation of the twist torus: (t, x) -> (t+1, tau_k x).
inline SmoothMap deck_twist_map(const TwistProfile& pr, int n) {
  return make_smooth_map(2 * n + 1, 2 * n + 1, [pr, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> y(2 * n + 1);
    y[0] = x[0] + 1.0;
    y.tail(2 * n) = detail::dehn_power_raw(pr, VecX<S>(x.tail(2 * n)), 1);
    return y;
  });
}

// Deck transformation of M_k: (t, q, p) -> (t+1, (-1)^k q, (-1)^k p).
inline SmoothMap deck_m_map(const TwistProfile& pr, int n) {
  const bool flip = pr.k % 2 != 0;
  return make_smooth_map(2 * n + 1, 2 * n + 1, [flip, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> y(2 * n + 1);
    y[0] = x[0] + 1.0;
    y.tail(2 * n) = flip ? VecX<S>(-x.tail(2 * n)) : VecX<S>(x.tail(2 * n));
    return y;
  });
}

// ---- constraint manifolds ------------------------------------------------

inline ConstraintManifold cotangent_manifold(int n) {
  ConstraintManifold m;
  m.ambient_dim = 2 * n;
  m.constraints.push_back(make_smooth_map(2 * n, 1, [n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> r(1);
    r[0] = squared_norm<S>(VecX<S>(x.head(n))) - 1.0;
    return r;
  }));
  m.constraints.push_back(make_smooth_map(2 * n, 1, [n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> r(1);
    r[0] = dot<S>(VecX<S>(x.head(n)), VecX<S>(x.tail(n)));
    return r;
  }));
  return m;
}

// R x T*S^{n-1} inside R^{1+2n}; also serves as the mapping-torus model.
inline ConstraintManifold torus_manifold(int n) {
  ConstraintManifold m;
  m.ambient_dim = 2 * n + 1;
  m.constraints.push_back(make_smooth_map(2 * n + 1, 1, [n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> r(1);
    r[0] = squared_norm<S>(VecX<S>(x.segment(1, n))) - 1.0;
    return r;
  }));
  m.constraints.push_back(make_smooth_map(2 * n + 1, 1, [n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> r(1);
    r[0] = dot<S>(VecX<S>(x.segment(1, n)), VecX<S>(x.tail(n)));
    return r;
  }));
  return m;
}

// Sphere bundle S_c T*S^{n-1} = {|q| = 1, q.p = 0, |p| = c} in R^{2n}.
inline ConstraintManifold sphere_bundle_manifold(int n, double c) {
  ConstraintManifold m = cotangent_manifold(n);
  m.constraints.push_back(make_smooth_map(2 * n, 1, [n, c](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> r(1);
    r[0] = squared_norm<S>(VecX<S>(x.tail(n))) - c * c;
    return r;
  }));
  return m;
}

// ---- sampling -------------------------------------------------------------

inline CotangentPoint sample_cotangent_point(std::mt19937_64& rng, int n,
                                             double momentum) {
  auto [q, w] = random_orthonormal_pair(rng, n);
  return CotangentPoint{q, momentum * w};
}

// Momentum magnitude stratified over the profile regions; ceiling `top`.
inline CotangentPoint sample_cotangent_stratified(std::mt19937_64& rng,
                                                  const TwistProfile& pr,
                                                  int n, double top) {
  const double mag = stratified_momentum(rng, pr.transition_lo(),
                                         pr.transition_hi(), top);
  return sample_cotangent_point(rng, n, mag);
}

inline VecXd pack_torus(const TorusPoint& tp) {
  VecXd x(2 * tp.x.n() + 1);
  x << tp.t, tp.x.q, tp.x.p;
  return x;
}

inline TorusPoint unpack_torus(const VecXd& x, TorusModel model) {
  const int n = static_cast<int>(x.size() - 1) / 2;
  return TorusPoint{x[0], CotangentPoint{x.segment(1, n), x.tail(n)}, model};
}

inline VecXd pack_cotangent(const CotangentPoint& pt) {
  VecXd x(2 * pt.n());
  x << pt.q, pt.p;
  return x;
}

inline CotangentPoint unpack_cotangent(const VecXd& x) {
  const int n = static_cast<int>(x.size()) / 2;
  return CotangentPoint{x.head(n), x.tail(n)};
}

}  // namespace obk
