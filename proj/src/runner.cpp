#include "openbook/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>
#include <utility>

#include "openbook/brieskorn.hpp"
#include "openbook/cotangent.hpp"
#include "openbook/forms.hpp"
#include "openbook/openbook.hpp"
#include "openbook/profile.hpp"
#include "openbook/sampling.hpp"

namespace obk {
namespace {

struct Ctx {
  BrieskornParams pm;
  TwistProfile pr;
  int samples;
  std::uint64_t seed;
};

// One generator per (n, k, check, sample): order-independent, reproducible.
std::mt19937_64 rng_at(const Ctx& c, std::uint64_t check_id, std::uint64_t i) {
  return make_rng(c.seed, {static_cast<std::uint64_t>(c.pm.n),
                           static_cast<std::uint64_t>(c.pm.k), check_id, i});
}

VecXd random_tangent(const ConstraintManifold& mfd, const VecXd& x,
                     std::mt19937_64& rng) {
  const MatXd B = tangent_basis(mfd, x);
  VecXd v = B * gaussian_vector(rng, static_cast<int>(B.cols()));
  const double nrm = v.norm();
  return nrm > 1e-12 ? VecXd(v / nrm) : VecXd(B.col(0));
}

VecXd pack_torus_raw(double t, const CotangentPoint& pt) {
  VecXd x(2 * pt.n() + 1);
  x << t, pt.q, pt.p;
  return x;
}

// ---- profile ---------------------------------------------------------------

CheckResult chk_profile_values(const Ctx& c) {
  double err = 0;
  err = std::max(err, std::abs(base_bump(0.5)));
  err = std::max(err, std::abs(base_bump(3.0) - 1.0));
  err = std::max(err, std::abs(base_bump(1.5) - 0.5));
  err = std::max(err, std::abs(base_bump_deriv(1.5) - 2.0));
  err = std::max(err,
                 std::abs(f_k_eval(c.pr, 1.5 / c.pr.c_k) - c.pr.kpi() / 2));
  return make_result("profile_values", 5, err, 1e-14);
}

// I(2/c_k) = k pi/(2 c_k) by the f(t) + f(3-t) = 1 symmetry, and the flat
// tail value of h_k that follows from it.
CheckResult chk_profile_integral_half(const Ctx& c) {
  const auto& pr = c.pr;
  double err = std::abs(pr.i_full - pr.kpi() / (2 * pr.c_k));
  err = std::max(err,
                 std::abs(pr.h_k_tail() - (1.0 - 1.5 * pr.kpi() / pr.c_k)));
  return make_result("profile_integral_half", 2, err, 1e-12);
}

CheckResult chk_profile_monotone(const Ctx& c) {
  const int grid = std::max(2000, c.samples);
  double err = 0;
  double prev = 0;
  for (int i = 0; i < grid; ++i) {
    const double t = 0.8 + 1.4 * i / (grid - 1.0);
    const double f = base_bump(t);
    err = std::max(err, std::max(0.0, -f));
    err = std::max(err, std::max(0.0, f - 1.0));
    if (i > 0) err = std::max(err, std::max(0.0, prev - f));
    prev = f;
  }
  return make_result("profile_monotone", grid, err, 0.0);
}

CheckResult chk_profile_hk_floor(const Ctx& c) {
  const auto& pr = c.pr;
  const double floor_v = 1.0 - 3 * pr.kpi() / pr.c_k;
  const double top = 10 * pr.transition_hi();
  double minh = std::numeric_limits<double>::infinity();
  const int grid = 1000;
  for (int i = 0; i < grid; ++i)
    minh = std::min(minh, h_k_eval(pr, top * i / (grid - 1.0)));
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 3, i);
    const double y = stratified_momentum(rng, pr.transition_lo(),
                                         pr.transition_hi(), top);
    minh = std::min(minh, h_k_eval(pr, y));
  }
  const double err = std::max(0.0, floor_v - minh);
  return make_result("profile_hk_floor", grid + c.samples, err, 0.0);
}

// h_k'(y) = -y f_k'(y), checked with a dual derivative.
CheckResult chk_profile_hk_derivative(const Ctx& c) {
  const auto& pr = c.pr;
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 4, i);
    const double y = stratified_momentum(rng, pr.transition_lo(),
                                         pr.transition_hi(),
                                         3 * pr.transition_hi());
    const double d = h_k_eval(pr, D1(y, 1.0)).der;
    err = std::max(err, std::abs(d + y * f_k_deriv(pr, y)));
  }
  return make_result("profile_hk_derivative", c.samples, err, 1e-10);
}

CheckResult chk_profile_haux_roundtrip(const Ctx& c) {
  const auto& pr = c.pr;
  const double top = 10 * pr.transition_hi();
  double err = 0;
  const int grid = 200;
  for (int i = 0; i < grid; ++i) {
    const double y = top * i / (grid - 1.0);
    err = std::max(err, std::abs(h_aux_inverse(pr, h_aux(pr, y)) - y));
  }
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 5, i);
    const double y = uniform_in(rng, 0.0, top);
    err = std::max(err, std::abs(h_aux_inverse(pr, h_aux(pr, y)) - y));
  }
  return make_result("profile_haux_roundtrip", grid + c.samples, err, 1e-9);
}

// h'(y) = h_k(y) / (1 + I(y))^2, dual derivative against the closed form.
CheckResult chk_profile_haux_derivative(const Ctx& c) {
  const auto& pr = c.pr;
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 6, i);
    const double y = stratified_momentum(rng, pr.transition_lo(),
                                         pr.transition_hi(),
                                         3 * pr.transition_hi());
    const double d = h_aux(pr, D1(y, 1.0)).der;
    const double denom = 1.0 + f_k_integral(pr, y);
    err = std::max(err, std::abs(d - h_k_eval(pr, y) / (denom * denom)));
  }
  return make_result("profile_haux_derivative", c.samples, err, 1e-10);
}

// ---- Dehn twist ------------------------------------------------------------

CheckResult chk_dehn_pullback(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = cotangent_manifold(n);
  const OneForm lam = lambda_can(n);
  const OneForm mtf = momentum_twist_form(c.pr, n);
  const DifferentialForm pulled = pullback(dehn_twist_map(c.pr, n, 1), lam);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 10, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_cotangent(pt);
    const VecXd v = random_tangent(mfd, x, rng);
    err = std::max(err, std::abs(pulled.eval(x, {v}) - lam(x, v) - mtf(x, v)));
  }
  return make_result("dehn_pullback", c.samples, err, 1e-8);
}

CheckResult chk_dehn_symplecto(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = cotangent_manifold(n);
  const TwoForm dlam = exterior_derivative(lambda_can(n));
  const DifferentialForm pulled = pullback(dehn_twist_map(c.pr, n, 1), dlam);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 11, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_cotangent(pt);
    const VecXd u = random_tangent(mfd, x, rng);
    const VecXd v = random_tangent(mfd, x, rng);
    err = std::max(err, std::abs(pulled.eval(x, {u, v}) - dlam(x, u, v)));
  }
  return make_result("dehn_symplecto", c.samples, err, 1e-8);
}

// tau_k^m preserves |q|, |p| and the orthogonality q.p, for several powers.
CheckResult chk_dehn_momentum(const Ctx& c) {
  const int n = c.pm.n;
  double err = 0;
  const int powers[5] = {-2, -1, 1, 2, 3};
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 12, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_cotangent(pt);
    const int m = powers[i % 5];
    const VecXd y = dehn_twist_map(c.pr, n, m).f0(x);
    const VecXd q = y.head(n);
    const VecXd p = y.tail(n);
    err = std::max(err, std::abs(p.norm() - pt.momentum()));
    err = std::max(err, std::abs(q.norm() - 1.0));
    err = std::max(err, std::abs(q.dot(p)));
  }
  return make_result("dehn_momentum", c.samples, err, 1e-12);
}

// Inverse round trips, and three single twists against the closed-form cube.
CheckResult chk_dehn_roundtrip(const Ctx& c) {
  const int n = c.pm.n;
  const SmoothMap fwd = dehn_twist_map(c.pr, n, 1);
  const SmoothMap bwd = dehn_twist_map(c.pr, n, -1);
  const SmoothMap cube = dehn_twist_map(c.pr, n, 3);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 13, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_cotangent(pt);
    err = std::max(err, (bwd.f0(fwd.f0(x)) - x).norm());
    err = std::max(err, (fwd.f0(bwd.f0(x)) - x).norm());
    err = std::max(err, (fwd.f0(fwd.f0(fwd.f0(x))) - cube.f0(x)).norm());
  }
  return make_result("dehn_roundtrip", c.samples, err, 1e-10);
}

// (-1)^k times the identity below the twist region, the identity above it.
CheckResult chk_dehn_flat(const Ctx& c) {
  const int n = c.pm.n;
  const double sign = c.pm.k % 2 == 0 ? 1.0 : -1.0;
  const SmoothMap tau = dehn_twist_map(c.pr, n, 1);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 14, i);
    const CotangentPoint lo = sample_cotangent_point(
        rng, n, uniform_in(rng, 0.0, c.pr.transition_lo()));
    const VecXd xl = pack_cotangent(lo);
    err = std::max(err, (tau.f0(xl) - sign * xl).norm());
    const CotangentPoint hi = sample_cotangent_point(
        rng, n, uniform_in(rng, c.pr.transition_hi(), 3.0));
    const VecXd xh = pack_cotangent(hi);
    err = std::max(err, (tau.f0(xh) - xh).norm());
  }
  return make_result("dehn_flat", c.samples, err, 1e-12);
}

// ---- mapping torus forms ---------------------------------------------------

CheckResult chk_glue_preserves_form(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = torus_manifold(n);
  const OneForm form = contact_form_cylinder(n);
  const DifferentialForm pulled = pullback(glue_map(c.pr, n), form);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 20, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, -1.0, 2.0), pt);
    const VecXd v = random_tangent(mfd, x, rng);
    err = std::max(err, std::abs(pulled.eval(x, {v}) - form(x, v)));
  }
  return make_result("glue_preserves_form", c.samples, err, 1e-8);
}

// beta_k is the pullback of dt + lambda_can under (t,q,p) -> (h_k(|p|) t,q,p);
// this identity holds for arbitrary ambient directions.
CheckResult chk_beta_reparam(const Ctx& c) {
  const int n = c.pm.n;
  const OneForm form = contact_form_cylinder(n);
  const OneForm beta = beta_k(c.pr, n);
  const DifferentialForm pulled = pullback(reparam_map(c.pr, n), form);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 21, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, -1.0, 2.0), pt);
    const VecXd v = random_unit_vector(rng, 2 * n + 1);
    err = std::max(err, std::abs(pulled.eval(x, {v}) - beta(x, v)));
  }
  return make_result("beta_reparam", c.samples, err, 1e-8);
}

CheckResult chk_beta_deck(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = torus_manifold(n);
  const OneForm beta = beta_k(c.pr, n);
  const DifferentialForm pulled = pullback(deck_twist_map(c.pr, n), beta);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 22, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, -1.0, 2.0), pt);
    const VecXd v = random_tangent(mfd, x, rng);
    err = std::max(err, std::abs(pulled.eval(x, {v}) - beta(x, v)));
  }
  return make_result("beta_deck", c.samples, err, 1e-8);
}

// beta ^ (d beta)^{n-1} is a volume form of constant sign on the torus.
CheckResult chk_beta_contact(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = torus_manifold(n);
  const OneForm beta = beta_k(c.pr, n);
  double err = 0;
  double ref = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 23, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, -1.0, 2.0), pt);
    const double v = contact_volume(beta, mfd, x);
    if (i == 0) ref = v >= 0 ? 1.0 : -1.0;
    err = std::max(err, std::max(0.0, 1e-12 - ref * v));
  }
  return make_result("beta_contact", c.samples, err, 0.0);
}

// ---- straightening map -----------------------------------------------------

CheckResult chk_psi_pullback(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = torus_manifold(n);
  const OneForm beta = beta_k(c.pr, n);
  const OneForm target = straightened_form(c.pr, n);
  const DifferentialForm pulled = pullback(psi_map(c.pr, n), beta);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 24, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, -1.0, 2.0), pt);
    const VecXd v = random_tangent(mfd, x, rng);
    err = std::max(err, std::abs(pulled.eval(x, {v}) - target(x, v)));
  }
  return make_result("psi_pullback", c.samples, err, 1e-8);
}

// Psi intertwines the two deck transformations, so it descends to the
// quotient tori.
CheckResult chk_psi_equivariance(const Ctx& c) {
  const int n = c.pm.n;
  const SmoothMap psi = psi_map(c.pr, n);
  const SmoothMap sigma = deck_m_map(c.pr, n);
  const SmoothMap deck = deck_twist_map(c.pr, n);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 25, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, -1.0, 2.0), pt);
    err = std::max(err, (psi.f0(sigma.f0(x)) - deck.f0(psi.f0(x))).norm());
  }
  return make_result("psi_equivariance", c.samples, err, 1e-9);
}

CheckResult chk_psi_roundtrip(const Ctx& c) {
  const int n = c.pm.n;
  const SmoothMap fwd = psi_map(c.pr, n);
  const SmoothMap bwd = psi_inverse_map(c.pr, n);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 26, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, -1.0, 2.0), pt);
    err = std::max(err, (bwd.f0(fwd.f0(x)) - x).norm());
    err = std::max(err, (fwd.f0(bwd.f0(x)) - x).norm());
  }
  return make_result("psi_roundtrip", c.samples, err, 1e-10);
}

// Deck steps followed by normalization recover the fundamental-domain
// representative, in all three torus models.
CheckResult chk_torus_normalize(const Ctx& c) {
  const int n = c.pm.n;
  const SmoothMap deck = deck_twist_map(c.pr, n);
  const SmoothMap gdeck = glue_map(c.pr, n);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 27, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const double t0 = uniform_in(rng, 0.05, 0.95);
    const int m = 1 + (i % 3);

    const TorusPoint a =
        normalize_torus_point(c.pr, TorusPoint{t0 + m, pt, TorusModel::M});
    const double sgn = (c.pm.k * m) % 2 == 0 ? 1.0 : -1.0;
    err = std::max(err, std::abs(a.t - t0));
    err = std::max(err, (a.x.q - sgn * pt.q).norm());
    err = std::max(err, (a.x.p - sgn * pt.p).norm());

    VecXd y = pack_torus_raw(t0, pt);
    for (int j = 0; j < m; ++j) y = deck.f0(y);
    const TorusPoint b =
        normalize_torus_point(c.pr, unpack_torus(y, TorusModel::Twist));
    err = std::max(err, (pack_torus(b) - pack_torus_raw(t0, pt)).norm());
    const TorusPoint b2 = normalize_torus_point(c.pr, b);
    err = std::max(err, (pack_torus(b2) - pack_torus(b)).norm());

    const double h = h_k_eval(c.pr, pt.momentum());
    VecXd yg = pack_torus_raw(t0 * h, pt);
    for (int j = 0; j < m; ++j) yg = gdeck.f0(yg);
    const TorusPoint g =
        normalize_torus_point(c.pr, unpack_torus(yg, TorusModel::Glued));
    err = std::max(err, (pack_torus(g) - pack_torus_raw(t0 * h, pt)).norm());
  }
  return make_result("torus_normalize", c.samples, err, 1e-10);
}

// ---- page profile functions ------------------------------------------------

CheckResult chk_fg_identity(const Ctx& c) {
  const int k = c.pm.k;
  const int grid = std::max(1000, c.samples);
  double err = 0;
  for (int i = 0; i < grid; ++i) {
    const double r = 0.9999 * i / (grid - 1.0);
    const double s = r * r;
    const double lhs = (1 - s) * (1 - s) + s * detail::F_sq(k, s) +
                       detail::G_sq(k, s);
    err = std::max(err, std::abs(lhs - 2.0));
  }
  return make_result("fg_identity", grid, err, 1e-12);
}

// The F^2 expansion and the direct quotient agree on the overlap band.
CheckResult chk_fg_branch_consistency(const Ctx& c) {
  const int k = c.pm.k;
  const int grid = 400;
  double err = 0;
  for (int i = 0; i < grid; ++i) {
    const double s = 1e-6 * std::pow(1e3, i / (grid - 1.0));
    err = std::max(err,
                   std::abs(detail::F_sq_series(k, s) -
                            detail::F_sq_direct(k, s)));
  }
  return make_result("fg_branch_consistency", grid, err, 1e-9);
}

CheckResult chk_fg_values(const Ctx& c) {
  const int k = c.pm.k;
  double err = std::abs(F_cap(k, 0.0) * F_cap(k, 0.0) - (2.0 + k) / 2);
  err = std::max(err, std::abs(G_cap(k, 0.0) - 1.0));
  return make_result("fg_values", 2, err, 1e-15);
}

// ---- page embedding ---------------------------------------------------------

CheckResult chk_phi_defect(const Ctx& c) {
  const int count = std::max(1000, c.samples);
  double err = 0;
  for (int i = 0; i < count; ++i) {
    auto rng = rng_at(c, 30, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, c.pm.n, 0.999);
    const AmbientPoint z = phi_embed(c.pm, pc.t, pc.x);
    const auto [df, ds] = defect(c.pm, z);
    err = std::max(err, std::max(df, ds));
  }
  return make_result("phi_defect", count, err, 1e-9);
}

OneForm phi_pull_target(const BrieskornParams& pm) {
  const int k = pm.k;
  const int n = pm.n;
  return make_one_form(2 * n + 1, [k, n](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> p = x.tail(n);
    const S s = squared_norm<S>(p);
    const S fg = sqrt(detail::F_sq(k, s) * detail::G_sq(k, s));
    VecX<S> a = VecX<S>::Zero(2 * n + 1);
    a[0] = S(4 * std::numbers::pi * k);
    a.segment(1, n) = (4.0 * fg) * p;
    return a;
  });
}

CheckResult chk_phi_pullback(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = torus_manifold(n);
  const OneForm target = phi_pull_target(c.pm);
  const DifferentialForm pulled = pullback(phi_embed_map(c.pm), alpha_k(c.pm));
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 31, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, n, 0.95);
    const VecXd x = pack_torus_raw(pc.t, pc.x);
    const VecXd v = random_tangent(mfd, x, rng);
    err = std::max(err, std::abs(pulled.eval(x, {v}) - target(x, v)));
  }
  return make_result("phi_pullback", c.samples, err, 1e-8);
}

CheckResult chk_phi_dt_coeff(const Ctx& c) {
  const int n = c.pm.n;
  const DifferentialForm pulled = pullback(phi_embed_map(c.pm), alpha_k(c.pm));
  VecXd e0 = VecXd::Zero(2 * n + 1);
  e0[0] = 1.0;
  const double want = 4 * std::numbers::pi * c.pm.k;
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 32, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, n, 0.95);
    const VecXd x = pack_torus_raw(pc.t, pc.x);
    err = std::max(err, std::abs(pulled.eval(x, {e0}) - want));
  }
  return make_result("phi_dt_coeff", c.samples, err, 1e-9);
}

CheckResult chk_phi_theta(const Ctx& c) {
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 33, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, c.pm.n, 0.95);
    const AmbientPoint z = phi_embed(c.pm, pc.t, pc.x);
    const std::complex<double> want(std::cos(2 * std::numbers::pi * pc.t),
                                    std::sin(2 * std::numbers::pi * pc.t));
    err = std::max(err, std::abs(theta(z) - want));
  }
  return make_result("phi_theta", c.samples, err, 1e-10);
}

// Phi composed with the deck transformation of M_k is Phi itself.
CheckResult chk_phi_deck(const Ctx& c) {
  const int n = c.pm.n;
  const SmoothMap phi = phi_embed_map(c.pm);
  const SmoothMap sigma = deck_m_map(c.pr, n);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 34, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, n, 0.95);
    const VecXd x = pack_torus_raw(pc.t, pc.x);
    err = std::max(err, (phi.f0(sigma.f0(x)) - phi.f0(x)).norm());
  }
  return make_result("phi_deck", c.samples, err, 1e-10);
}

// ---- rescaling --------------------------------------------------------------

CheckResult chk_s_equation(const Ctx& c) {
  const auto& pr = c.pr;
  const int grid = 1000;
  double err = 0;
  for (int i = 0; i < grid; ++i) {
    const double r = 0.999 * i / (grid - 1.0);
    const double u = page_momentum_ratio(pr, r);
    const double g = h_aux_inverse(pr, u);
    err = std::max(err, std::abs(h_aux(pr, g) - u));
  }
  return make_result("s_equation", grid, err, 1e-12);
}

CheckResult chk_s_roundtrip(const Ctx& c) {
  const int n = c.pm.n;
  const SmoothMap fwd = s_rescale_map(c.pr, n);
  const SmoothMap bwd = s_rescale_inverse_map(c.pr, n);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 40, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, n, 0.97);
    const VecXd x = pack_torus_raw(pc.t, pc.x);
    err = std::max(err, (bwd.f0(fwd.f0(x)) - x).norm());
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd y = pack_torus_raw(uniform_in(rng, 0.0, 1.0), pt);
    err = std::max(err, (fwd.f0(bwd.f0(y)) - y).norm());
  }
  return make_result("s_roundtrip", c.samples, err, 1e-9);
}

CheckResult chk_u_monotone(const Ctx& c) {
  const auto& pr = c.pr;
  const int grid = 2000;
  double err = 0;
  double prev = -1.0;
  for (int i = 0; i < grid; ++i) {
    const double r = (1.0 - 1e-10) * i / (grid - 1.0);
    const double u = page_momentum_ratio(pr, r);
    if (i > 0) err = std::max(err, std::max(0.0, prev - u));
    prev = u;
  }
  return make_result("u_monotone", grid, err, 0.0);
}

CheckResult chk_u_sup(const Ctx& c) {
  const double u = page_momentum_ratio(c.pr, 1.0 - 1e-10);
  const double err = std::abs(u - 1.0 / c.pr.kpi());
  return make_result("u_sup", 1, err, 1e-9);
}

// ---- coordinate map ---------------------------------------------------------

// The pullback of the ambient contact form equals beta_k up to the positive
// conformal factor 4 pi k / (1 + I(|p|)); see the README discussion of the
// normalization.
CheckResult chk_ck_pullback(const Ctx& c) {
  const int n = c.pm.n;
  const ConstraintManifold mfd = torus_manifold(n);
  const OneForm beta = beta_k(c.pr, n);
  const DifferentialForm pulled =
      pullback(c_map_as_smooth(c.pm, c.pr), alpha_k(c.pm));
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 41, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, 0.0, 1.0), pt);
    const VecXd v = random_tangent(mfd, x, rng);
    const double fac = 4 * std::numbers::pi * c.pm.k /
                       (1.0 + f_k_integral(c.pr, pt.momentum()));
    err = std::max(err, std::abs(pulled.eval(x, {v}) - fac * beta(x, v)));
  }
  return make_result("ck_pullback", c.samples, err, 1e-6);
}

CheckResult chk_ck_fibration(const Ctx& c) {
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 42, i);
    const CotangentPoint pt =
        sample_cotangent_stratified(rng, c.pr, c.pm.n, 3.0);
    const double t = uniform_in(rng, 0.0, 1.0);
    const AmbientPoint z = c_map(c.pm, c.pr, TorusPoint{t, pt, TorusModel::Twist});
    const std::complex<double> want(std::cos(2 * std::numbers::pi * t),
                                    std::sin(2 * std::numbers::pi * t));
    err = std::max(err, std::abs(theta(z) - want));
  }
  return make_result("ck_fibration", c.samples, err, 1e-9);
}

CheckResult chk_ck_deck(const Ctx& c) {
  const int n = c.pm.n;
  const SmoothMap cmap = c_map_as_smooth(c.pm, c.pr);
  const SmoothMap deck = deck_twist_map(c.pr, n);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 43, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_torus_raw(uniform_in(rng, 0.0, 1.0), pt);
    err = std::max(err, (cmap.f0(deck.f0(x)) - cmap.f0(x)).norm());
  }
  return make_result("ck_deck", c.samples, err, 1e-8);
}

CheckResult chk_ck_roundtrip(const Ctx& c) {
  const int n = c.pm.n;
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 44, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const double t = uniform_in(rng, 0.02, 0.98);
    const TorusPoint tp{t, pt, TorusModel::Twist};
    const AmbientPoint z = c_map(c.pm, c.pr, tp);
    const TorusPoint back = c_map_inverse(c.pm, c.pr, z);
    err = std::max(err, (pack_torus(back) - pack_torus(tp)).norm());
    const AmbientPoint z2 = c_map(c.pm, c.pr, back);
    err = std::max(err, (z2.zr - z.zr).norm());
  }
  return make_result("ck_roundtrip", c.samples, err, 1e-8);
}

// ---- ambient structure -----------------------------------------------------

CheckResult chk_binding_normal(const Ctx& c) {
  const OneForm alpha = alpha_k(c.pm);
  const ConstraintManifold wm = w_manifold(c.pm);
  const ConstraintManifold bm = binding_manifold(c.pm);
  const MatXd A = exterior_derivative(alpha).a0(VecXd::Zero(2 * c.pm.n + 2));
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 50, i);
    const AmbientPoint z = sample_binding(c.pm, rng);
    const auto [e1, e2] = binding_normal_basis(c.pm, z);
    const MatXd J = constraint_jacobian(wm, z.zr);
    err = std::max(err, (J * e1).cwiseAbs().maxCoeff());
    err = std::max(err, (J * e2).cwiseAbs().maxCoeff());
    err = std::max(err, std::abs(alpha(z.zr, e1)));
    err = std::max(err, std::abs(alpha(z.zr, e2)));
    const MatXd B = tangent_basis(bm, z.zr);
    for (int j = 0; j < B.cols(); ++j) {
      err = std::max(err, std::abs(e1.dot(A * B.col(j))));
      err = std::max(err, std::abs(e2.dot(A * B.col(j))));
    }
    err = std::max(err, std::abs(e1.dot(A * e2) - 1.0));
  }
  return make_result("binding_normal", c.samples, err, 1e-9);
}

// alpha ^ (d alpha)^{n-1} keeps one sign over the whole link: binding
// points, page points, and rotated page points.
CheckResult chk_w_contact(const Ctx& c) {
  const OneForm alpha = alpha_k(c.pm);
  const ConstraintManifold mfd = w_manifold(c.pm);
  double err = 0;
  double ref = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 51, i);
    AmbientPoint z{VecXd()};
    if (i % 3 == 0) {
      z = sample_binding(c.pm, rng);
    } else {
      const PageCoordinates pc = sample_page_point(rng, c.pr, c.pm.n, 0.97);
      z = phi_embed(c.pm, pc.t, pc.x);
      if (i % 3 == 2)
        z = r_action(c.pm, uniform_in(rng, 0.0, 2 * std::numbers::pi), z);
    }
    const double v = contact_volume(alpha, mfd, z.zr);
    if (i == 0) ref = v >= 0 ? 1.0 : -1.0;
    err = std::max(err, std::max(0.0, 1e-12 - ref * v));
  }
  return make_result("w_contact", c.samples, err, 0.0);
}

CheckResult chk_alpha_so_invariant(const Ctx& c) {
  const OneForm alpha = alpha_k(c.pm);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 52, i);
    const MatXd A = random_rotation(rng, c.pm.n);
    const DifferentialForm pulled = pullback(so_n_action_map(c.pm, A), alpha);
    const VecXd z = gaussian_vector(rng, 2 * c.pm.n + 2);
    const VecXd v = random_unit_vector(rng, 2 * c.pm.n + 2);
    err = std::max(err, std::abs(pulled.eval(z, {v}) - alpha(z, v)));
  }
  return make_result("alpha_so_invariant", c.samples, err, 1e-10);
}

// theta(e^{it} . z) = e^{it} theta(z) and SO(n)-invariance of theta.
CheckResult chk_theta_equivariant(const Ctx& c) {
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 53, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, c.pm.n, 0.97);
    const AmbientPoint z = phi_embed(c.pm, pc.t, pc.x);
    const double t = uniform_in(rng, 0.0, 2 * std::numbers::pi);
    const std::complex<double> rot(std::cos(t), std::sin(t));
    err = std::max(err, std::abs(theta(r_action(c.pm, t, z)) - rot * theta(z)));
    const MatXd A = random_rotation(rng, c.pm.n);
    err = std::max(err, std::abs(theta(so_n_action(c.pm, A, z)) - theta(z)));
  }
  return make_result("theta_equivariant", c.samples, err, 1e-10);
}

// Both symmetry groups preserve the defining equations.
CheckResult chk_group_defect(const Ctx& c) {
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 54, i);
    const PageCoordinates pc = sample_page_point(rng, c.pr, c.pm.n, 0.97);
    const AmbientPoint z = phi_embed(c.pm, pc.t, pc.x);
    const auto base = defect(c.pm, z);
    const auto moved =
        defect(c.pm, r_action(c.pm, uniform_in(rng, 0.0, 2 * std::numbers::pi), z));
    err = std::max(err, std::abs(moved.first - base.first));
    err = std::max(err, std::abs(moved.second - base.second));
    const MatXd A = random_rotation(rng, c.pm.n);
    const auto rotated = defect(c.pm, so_n_action(c.pm, A, z));
    err = std::max(err, std::abs(rotated.first - base.first));
    err = std::max(err, std::abs(rotated.second - base.second));
  }
  return make_result("group_defect", c.samples, err, 1e-12);
}

// iota_{p d/dp} d(lambda_can) = lambda_can, the Liouville property.
CheckResult chk_lambda_liouville(const Ctx& c) {
  const int n = c.pm.n;
  const OneForm lam = lambda_can(n);
  const TwoForm dlam = exterior_derivative(lam);
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 55, i);
    const CotangentPoint pt = sample_cotangent_stratified(rng, c.pr, n, 3.0);
    const VecXd x = pack_cotangent(pt);
    VecXd nu = VecXd::Zero(2 * n);
    nu.tail(n) = pt.p;
    const VecXd v = random_unit_vector(rng, 2 * n);
    err = std::max(err, std::abs(dlam(x, nu, v) - lam(x, v)));
  }
  return make_result("lambda_liouville", c.samples, err, 1e-12);
}

// The polynomial evaluated by complex arithmetic and by the split
// real/imaginary formula.
CheckResult chk_poly_forms_agree(const Ctx& c) {
  double err = 0;
  for (int i = 0; i < c.samples; ++i) {
    auto rng = rng_at(c, 56, i);
    VecXd zr = gaussian_vector(rng, 2 * c.pm.n + 2);
    zr *= std::numbers::sqrt2 / zr.norm();
    const AmbientPoint z{zr};
    err = std::max(err, std::abs(poly_f(c.pm, z) - poly_f_realform(c.pm, z)));
  }
  return make_result("poly_forms_agree", c.samples, err, 1e-12);
}

// ---- AD vs FD --------------------------------------------------------------

struct MapCase {
  std::string label;
  SmoothMap map;
  std::function<VecXd(std::mt19937_64&)> domain;
};

std::vector<MapCase> registered_maps(const Ctx& c) {
  const int n = c.pm.n;
  const TwistProfile pr = c.pr;
  const BrieskornParams pm = c.pm;
  auto cot = [pr, n](std::mt19937_64& rng) {
    return pack_cotangent(sample_cotangent_stratified(rng, pr, n, 3.0));
  };
  auto torus = [pr, n](std::mt19937_64& rng) {
    return pack_torus_raw(uniform_in(rng, -0.2, 1.2),
                          sample_cotangent_stratified(rng, pr, n, 3.0));
  };
  auto disk = [pr, n](std::mt19937_64& rng) {
    return pack_torus_raw(uniform_in(rng, 0.0, 1.0),
                          sample_cotangent_stratified(rng, pr, n, 0.9));
  };
  auto ambient = [n](std::mt19937_64& rng) {
    return VecXd(gaussian_vector(rng, 2 * n + 2));
  };
  auto near_w = [pm, pr, n](std::mt19937_64& rng) {
    const CotangentPoint pt =
        sample_cotangent_point(rng, n, uniform_in(rng, 0.2, 2.5));
    const VecXd x = pack_torus_raw(uniform_in(rng, 0.1, 0.9), pt);
    VecXd z = detail::c_map_raw<double>(pm, pr, x);
    z += 1e-4 * gaussian_vector(rng, 2 * n + 2);
    return z;
  };
  std::vector<MapCase> cases;
  cases.push_back({"dehn_twist", dehn_twist_map(pr, n, 1), cot});
  cases.push_back({"dehn_twist_inverse", dehn_twist_map(pr, n, -1), cot});
  cases.push_back({"psi", psi_map(pr, n), torus});
  cases.push_back({"psi_inverse", psi_inverse_map(pr, n), torus});
  cases.push_back({"glue", glue_map(pr, n), torus});
  cases.push_back({"reparam", reparam_map(pr, n), torus});
  cases.push_back({"deck_twist", deck_twist_map(pr, n), torus});
  cases.push_back({"deck_m", deck_m_map(pr, n), torus});
  cases.push_back({"phi_embed", phi_embed_map(pm), disk});
  cases.push_back({"s_rescale", s_rescale_map(pr, n), disk});
  cases.push_back({"s_rescale_inverse", s_rescale_inverse_map(pr, n), torus});
  cases.push_back({"c_map", c_map_as_smooth(pm, pr), torus});
  cases.push_back({"c_map_inverse", c_map_inverse_as_smooth(pm, pr), near_w});
  cases.push_back({"r_action", r_action_map(pm, 0.37), ambient});
  {
    auto rng = make_rng(c.seed, {static_cast<std::uint64_t>(n),
                                 static_cast<std::uint64_t>(c.pm.k), 777});
    cases.push_back({"so_n_action", so_n_action_map(pm, random_rotation(rng, n)),
                     ambient});
  }
  return cases;
}

// Fourth-order central difference. The twist profile packs derivatives of
// order c_k^j into a band of width 1/c_k, so truncation grows like c_k^4
// with the relative normalization below; h = 2e-6 keeps the k = 8 cells two
// orders under tolerance while cancellation stays near 1e-10.
VecXd fd_directional4(const SmoothMap& map, const VecXd& x, const VecXd& v) {
  const double h = 2e-6;
  const VecXd f1 = map.f0(x + h * v);
  const VecXd fm1 = map.f0(x - h * v);
  const VecXd f2 = map.f0(x + 2 * h * v);
  const VecXd fm2 = map.f0(x - 2 * h * v);
  return (8.0 * (f1 - fm1) - (f2 - fm2)) / (12 * h);
}

CheckResult chk_ad_vs_fd(const Ctx& c) {
  const int probes = 100;
  double err = 0;
  int total = 0;
  const auto cases = registered_maps(c);
  for (std::size_t m = 0; m < cases.size(); ++m) {
    for (int i = 0; i < probes; ++i) {
      auto rng = rng_at(c, 60 + m, i);
      const VecXd x = cases[m].domain(rng);
      const VecXd v = random_unit_vector(rng, cases[m].map.domain_dim);
      const VecXd ad = differential(cases[m].map, x, v);
      const VecXd fd = fd_directional4(cases[m].map, x, v);
      err = std::max(err, (ad - fd).norm() / std::max(1.0, ad.norm()));
      ++total;
    }
  }
  return make_result("ad_vs_fd", total, err, 1e-6);
}

// ---- supported open book wrappers ------------------------------------------

CheckResult chk_binding_contact(const Ctx& c) {
  return check_binding_contact(c.pm, c.samples,
                               derive_stream(c.seed, {static_cast<std::uint64_t>(c.pm.n),
                                                      static_cast<std::uint64_t>(c.pm.k)}));
}

CheckResult chk_page_symplectic(const Ctx& c) {
  return check_page_symplectic(c.pm, c.pr, c.samples,
                               derive_stream(c.seed, {static_cast<std::uint64_t>(c.pm.n),
                                                      static_cast<std::uint64_t>(c.pm.k)}));
}

CheckResult chk_orientation_match(const Ctx& c) {
  return check_orientation_match(c.pm, c.samples,
                                 derive_stream(c.seed, {static_cast<std::uint64_t>(c.pm.n),
                                                        static_cast<std::uint64_t>(c.pm.k)}));
}

CheckResult chk_fiber_z0_constant(const Ctx& c) {
  return check_fiber_z0_constant(c.pm, c.pr, c.samples,
                                 derive_stream(c.seed, {static_cast<std::uint64_t>(c.pm.n),
                                                        static_cast<std::uint64_t>(c.pm.k)}));
}

// ---- registry ----------------------------------------------------------------

struct CheckDef {
  const char* name;
  CheckResult (*fn)(const Ctx&);
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"profile_values", chk_profile_values},
      {"profile_integral_half", chk_profile_integral_half},
      {"profile_monotone", chk_profile_monotone},
      {"profile_hk_floor", chk_profile_hk_floor},
      {"profile_hk_derivative", chk_profile_hk_derivative},
      {"profile_haux_roundtrip", chk_profile_haux_roundtrip},
      {"profile_haux_derivative", chk_profile_haux_derivative},
      {"dehn_pullback", chk_dehn_pullback},
      {"dehn_symplecto", chk_dehn_symplecto},
      {"dehn_momentum", chk_dehn_momentum},
      {"dehn_roundtrip", chk_dehn_roundtrip},
      {"dehn_flat", chk_dehn_flat},
      {"glue_preserves_form", chk_glue_preserves_form},
      {"beta_reparam", chk_beta_reparam},
      {"beta_deck", chk_beta_deck},
      {"beta_contact", chk_beta_contact},
      {"psi_pullback", chk_psi_pullback},
      {"psi_equivariance", chk_psi_equivariance},
      {"psi_roundtrip", chk_psi_roundtrip},
      {"torus_normalize", chk_torus_normalize},
      {"fg_identity", chk_fg_identity},
      {"fg_branch_consistency", chk_fg_branch_consistency},
      {"fg_values", chk_fg_values},
      {"phi_defect", chk_phi_defect},
      {"phi_pullback", chk_phi_pullback},
      {"phi_dt_coeff", chk_phi_dt_coeff},
      {"phi_theta", chk_phi_theta},
      {"phi_deck", chk_phi_deck},
      {"s_equation", chk_s_equation},
      {"s_roundtrip", chk_s_roundtrip},
      {"u_monotone", chk_u_monotone},
      {"u_sup", chk_u_sup},
      {"ck_pullback", chk_ck_pullback},
      {"ck_fibration", chk_ck_fibration},
      {"ck_deck", chk_ck_deck},
      {"ck_roundtrip", chk_ck_roundtrip},
      {"binding_contact", chk_binding_contact},
      {"page_symplectic", chk_page_symplectic},
      {"orientation_match", chk_orientation_match},
      {"fiber_z0_constant", chk_fiber_z0_constant},
      {"binding_normal", chk_binding_normal},
      {"w_contact", chk_w_contact},
      {"alpha_so_invariant", chk_alpha_so_invariant},
      {"theta_equivariant", chk_theta_equivariant},
      {"group_defect", chk_group_defect},
      {"lambda_liouville", chk_lambda_liouville},
      {"poly_forms_agree", chk_poly_forms_agree},
      {"ad_vs_fd", chk_ad_vs_fd},
  };
  return defs;
}

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (n_values.empty() || k_values.empty())
    throw std::invalid_argument("config: empty n or k list");
  for (int n : n_values)
    if (n < 2 || n > 4)
      throw std::invalid_argument("config: n must lie in [2, 4]");
  for (int k : k_values)
    if (k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  const auto names = known_checks();
  auto known = [&names](const std::string& s) {
    return std::find(names.begin(), names.end(), s) != names.end();
  };
  if (check_filter != "all" && !known(check_filter))
    throw std::invalid_argument("config: unknown check '" + check_filter + "'");
  for (const auto& [name, tol] : tol_overrides) {
    if (!known(name))
      throw std::invalid_argument("config: unknown check '" + name +
                                  "' in tolerance override");
    if (!(tol >= 0) || !std::isfinite(tol))
      throw std::invalid_argument("config: tolerance for '" + name +
                                  "' must be finite and nonnegative");
  }
}

std::vector<std::string> known_checks() {
  std::vector<std::string> names;
  names.reserve(registry().size());
  for (const auto& def : registry()) names.emplace_back(def.name);
  return names;
}

CheckReport run_battery(int n, int k, const RunConfig& cfg) {
  const Ctx ctx{BrieskornParams(n, k), TwistProfile::standard(k), cfg.samples,
                cfg.seed};
  CheckReport rep;
  rep.n = n;
  rep.k = k;
  rep.seed = cfg.seed;
  for (const auto& def : registry()) {
    if (cfg.check_filter != "all" && cfg.check_filter != def.name) continue;
    CheckResult r = def.fn(ctx);
    const auto it = cfg.tol_overrides.find(r.name);
    if (it != cfg.tol_overrides.end()) {
      r.tolerance = it->second;
      r.pass = r.max_abs_err <= r.tolerance;
    }
    rep.add(std::move(r));
  }
  return rep;
}

int thread_budget() {
  if (const char* env = std::getenv("OPENBOOK_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::vector<CheckReport> run_grid(const RunConfig& cfg) {
  cfg.validate();
  std::vector<std::pair<int, int>> pairs;
  for (int n : cfg.n_values)
    for (int k : cfg.k_values) pairs.emplace_back(n, k);
  std::vector<CheckReport> out(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < pairs.size();
         i = next.fetch_add(1)) {
      try {
        out[i] = run_battery(pairs[i].first, pairs[i].second, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int budget =
      std::min<std::size_t>(thread_budget(), pairs.size());
  if (budget <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(budget);
    for (int t = 0; t < budget; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

std::vector<std::string> failing_checks(
    const std::vector<CheckReport>& reports) {
  std::vector<std::string> names;
  for (const auto& r : reports)
    for (const auto& chk : r.checks)
      if (!chk.pass) {
        std::ostringstream tag;
        tag << chk.name << " (n=" << r.n << ", k=" << r.k << ")";
        names.push_back(tag.str());
      }
  return names;
}

std::string render_json(const RunConfig& cfg,
                        const std::vector<CheckReport>& reports) {
  nlohmann::json doc;
  doc["samples"] = cfg.samples;
  doc["seed"] = cfg.seed;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  doc["reports"] = arr;
  doc["pass"] = all_pass(reports);
  return doc.dump(2) + "\n";
}

std::string render_text(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(4) << "n" << std::setw(4) << "k"
      << std::setw(26) << "check" << std::right << std::setw(9) << "samples"
      << std::setw(15) << "max_abs_err" << std::setw(13) << "tolerance"
      << "  status\n";
  for (const auto& r : reports)
    for (const auto& chk : r.checks) {
      out << std::left << std::setw(4) << r.n << std::setw(4) << r.k
          << std::setw(26) << chk.name << std::right << std::setw(9)
          << chk.samples << std::setw(15) << std::scientific
          << std::setprecision(3) << chk.max_abs_err << std::setw(13)
          << chk.tolerance << "  " << (chk.pass ? "PASS" : "FAIL") << "\n";
      out << std::defaultfloat;
    }
  out << "overall: " << (all_pass(reports) ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string render_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "n,k,check,samples,max_abs_err,tolerance,pass\n";
  for (const auto& r : reports)
    for (const auto& chk : r.checks)
      out << r.n << ',' << r.k << ',' << chk.name << ',' << chk.samples << ','
          << fmt17(chk.max_abs_err) << ',' << fmt17(chk.tolerance) << ','
          << (chk.pass ? "true" : "false") << '\n';
  return out.str();
}

std::string profile_table(int k) {
  const TwistProfile pr = TwistProfile::standard(k);
  std::ostringstream out;
  out << "y,f_k,I,h_k,h_aux\n";
  auto row = [&out, &pr](double y) {
    out << fmt17(y) << ',' << fmt17(f_k_eval(pr, y)) << ','
        << fmt17(f_k_integral(pr, y)) << ',' << fmt17(h_k_eval(pr, y)) << ','
        << fmt17(h_aux(pr, y)) << '\n';
  };
  row(0.0);
  const double top = 10 * pr.transition_hi();
  const double bottom = top * 1e-4;
  const int rows = 160;
  for (int i = 0; i < rows; ++i)
    row(bottom * std::pow(top / bottom, i / (rows - 1.0)));
  out << "\nr,g\n";
  const int gr = 100;
  for (int i = 0; i < gr; ++i) {
    const double r = 0.999 * i / (gr - 1.0);
    const double g = h_aux_inverse(pr, page_momentum_ratio(pr, r));
    out << fmt17(r) << ',' << fmt17(g) << '\n';
  }
  return out.str();
}

std::string sample_lines(int n, int k, int count, std::uint64_t seed) {
  const BrieskornParams pm(n, k);
  const TwistProfile pr = TwistProfile::standard(k);
  std::ostringstream out;
  auto rngb = make_rng(seed, {1001});
  for (int i = 0; i < count; ++i) {
    const AmbientPoint z = sample_binding(pm, rngb);
    const auto [df, ds] = defect(pm, z);
    const nlohmann::json j{{"kind", "binding"},
                           {"z", to_json(z)},
                           {"defect_f", df},
                           {"defect_sphere", ds}};
    out << j.dump() << '\n';
  }
  auto rngp = make_rng(seed, {1002});
  for (int i = 0; i < count; ++i) {
    const PageCoordinates pc = sample_page_point(rngp, pr, n, 0.97);
    const AmbientPoint z = phi_embed(pm, pc.t, pc.x);
    const auto [df, ds] = defect(pm, z);
    const nlohmann::json j{{"kind", "page"},
                           {"z", to_json(z)},
                           {"defect_f", df},
                           {"defect_sphere", ds},
                           {"theta_unit_err", std::abs(std::abs(theta(z)) - 1.0)}};
    out << j.dump() << '\n';
  }
  auto rngt = make_rng(seed, {1003});
  for (int i = 0; i < count; ++i) {
    const TorusPoint tp{uniform_in(rngt, 0.0, 1.0),
                        sample_cotangent_stratified(rngt, pr, n, 3.0),
                        TorusModel::Twist};
    const nlohmann::json j{{"kind", "torus"},
                           {"point", to_json(tp)},
                           {"constraint_residual", tp.x.residual()}};
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace obk
