// Twist profile: the bump f, the scaled angle profile f_k, its integral I,
// h_k, the auxiliary function h(y) = y/(1+I(y)), and monotone inversion.
//
// All evaluations are templated on the scalar so the same code runs on
// double, Dual<double> and Dual<Dual<double>>. Branch decisions look only
// at the value part; every branch is exact on its region (the bump is
// identically 0 / 1 there), so derivatives are exact as well.
#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "openbook/dual.hpp"
#include "openbook/quadrature.hpp"
#include "openbook/types.hpp"

namespace obk {

// Smoothstep built from s(u) = exp(-1/u): 0 on (-inf,1], 1 on [2,inf),
// strictly increasing in between, derivative bounded by 2.
template <typename S>
S base_bump(const S& t) {
  if (value_of(t) <= 1.0) return S(0);
  if (value_of(t) >= 2.0) return S(1);
  const S a = exp(S(-1) / (t - 1));
  const S b = exp(S(-1) / (2 - t));
  return a / (a + b);
}

// Analytic derivative of base_bump, valid at every scalar level
// (so second derivatives of f_k never need a third dual level).
template <typename S>
S base_bump_deriv(const S& t) {
  if (value_of(t) <= 1.0 || value_of(t) >= 2.0) return S(0);
  const S u = t - 1;
  const S v = 2 - t;
  const S a = exp(S(-1) / u);
  const S b = exp(S(-1) / v);
  const S ap = a / (u * u);
  const S bp = b / (v * v);
  const S sum = a + b;
  return (ap * b + a * bp) / (sum * sum);
}

struct TwistProfile {
  int k = 1;
  double c_k = 0;      // scale; must exceed 3*k*pi
  double quad_tol = 1e-12;
  double i_full = 0;   // I(2/c_k), fixed at construction

  double transition_lo() const { return 1.0 / c_k; }
  double transition_hi() const { return 2.0 / c_k; }
  double kpi() const { return k * M_PI; }

  TwistProfile(int k_, double c_k_) : k(k_), c_k(c_k_) {
    if (k < 1) throw std::invalid_argument("TwistProfile: k must be >= 1");
    if (!(c_k > 3 * k * M_PI))
      throw std::invalid_argument("TwistProfile: c_k must exceed 3*k*pi");
    // I(2/c_k) = (k*pi/c_k) * int_1^2 f = k*pi/(2 c_k) since the bump is
    // symmetric about 3/2; keep the quadrature value, the identity is a test.
    i_full = integrate_gl64<double>(
        [this](double x) { return f_k_unchecked(x); }, transition_lo(),
        transition_hi());
  }

  static TwistProfile standard(int k) { return TwistProfile(k, 4 * k * M_PI); }

  template <typename S>
  S f_k_unchecked(const S& x) const {
    return kpi() * base_bump(c_k * x);
  }

  // h_k on the flat region y >= 2/c_k, where it is constant.
  double h_k_tail() const { return 1.0 - kpi() * transition_hi() + i_full; }
};

template <typename S>
S f_k_eval(const TwistProfile& pr, const S& x) {
  if (value_of(x) < 0)
    throw std::domain_error("f_k_eval: negative argument");
  return pr.f_k_unchecked(x);
}

template <typename S>
S f_k_deriv(const TwistProfile& pr, const S& x) {
  if (value_of(x) < 0)
    throw std::domain_error("f_k_deriv: negative argument");
  return pr.kpi() * pr.c_k * base_bump_deriv(pr.c_k * x);
}

// I(y) = int_0^y f_k. Zero below the transition, quadrature across it,
// exact linear tail k*pi*(y - 2/c_k) above.
template <typename S>
S f_k_integral(const TwistProfile& pr, const S& y) {
  if (value_of(y) < 0)
    throw std::domain_error("f_k_integral: negative argument");
  const double lo = pr.transition_lo();
  const double hi = pr.transition_hi();
  if (value_of(y) <= lo) return S(0);
  if (value_of(y) <= hi) {
    return integrate_gl64<S>([&pr](const S& x) { return pr.f_k_unchecked(x); },
                             S(lo), y);
  }
  return S(pr.i_full) + pr.kpi() * (y - hi);
}

// h_k(y) = 1 - y f_k(y) + I(y), the integration-by-parts form of
// 1 - int_0^y s f_k'(s) ds. Constant 1 below the transition and constant
// h_k_tail above it.
template <typename S>
S h_k_eval(const TwistProfile& pr, const S& y) {
  if (value_of(y) < 0)
    throw std::domain_error("h_k_eval: negative argument");
  if (value_of(y) <= pr.transition_lo()) return S(1);
  if (value_of(y) >= pr.transition_hi()) return S(pr.h_k_tail());
  return S(1) - y * pr.f_k_unchecked(y) + f_k_integral(pr, y);
}

// h(y) = y / (1 + I(y)), strictly increasing from 0 onto [0, 1/(k*pi)).
template <typename S>
S h_aux(const TwistProfile& pr, const S& y) {
  if (value_of(y) < 0)
    throw std::domain_error("h_aux: negative argument");
  return y / (S(1) + f_k_integral(pr, y));
}

// Bracketed bisection for a strictly increasing fn. Runs the bracket down
// to rounding collapse, which lands well inside the required
// 1e-12*max(1,|target|) residual; never more than 200 iterations.
template <typename F>
double monotone_invert(F&& fn, double target, double lo, double hi) {
  const double tol = 1e-12 * std::max(1.0, std::abs(target));
  double flo = fn(lo);
  double fhi = fn(hi);
  if (target < flo - tol || target > fhi + tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "monotone_invert: target " << target << " outside bracket range ["
        << flo << ", " << fhi << "]";
    throw OutOfRangeTarget(msg.str());
  }
  if (target <= flo) return lo;
  if (target >= fhi) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket collapsed to one ulp
    if (fn(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Inversion lifted to dual scalars through the inverse function theorem:
// value by bisection, derivative as target' / fn'(y). Recursion handles
// nested duals. fn must be callable at every scalar level.
template <typename F>
double invert_increasing(F&& fn, double target, double lo, double hi) {
  return monotone_invert([&fn](double x) { return fn(x); }, target, lo, hi);
}

template <typename F, typename T>
Dual<T> invert_increasing(F&& fn, const Dual<T>& target, double lo,
                          double hi) {
  const T y = invert_increasing(fn, target.val, lo, hi);
  const Dual<T> slope = fn(Dual<T>(y, T(1)));
  return Dual<T>(y, target.der / slope.der);
}

// Inverse of h_aux. The closed-form bracket uses I(y) <= k*pi*y, which gives
// h(y) >= y/(1 + k*pi*y) and hence an explicit upper bound for the preimage.
template <typename S>
S h_aux_inverse(const TwistProfile& pr, const S& target) {
  const double t = value_of(target);
  const double sup = 1.0 / pr.kpi();
  if (t < 0 || t >= sup) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "h_aux_inverse: target " << t << " outside the range [0, " << sup
        << ") of h";
    throw OutOfRangeTarget(msg.str());
  }
  if (t <= pr.transition_lo()) return target;  // I = 0 there, h = id
  const double hi = t / (1.0 - pr.kpi() * t) * (1 + 1e-12) + 1e-300;
  return invert_increasing(
      [&pr](const auto& y) { return h_aux(pr, y); }, target, 0.0, hi);
}

}  // namespace obk
