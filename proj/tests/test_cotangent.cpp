#include <cmath>
#include <numbers>

#include <doctest.h>

#include "openbook/cotangent.hpp"
#include "openbook/sampling.hpp"

using namespace obk;

namespace {

CotangentPoint sample(std::mt19937_64& rng, int n, double mom) {
  return sample_cotangent_point(rng, n, mom);
}

}  // namespace

TEST_SUITE("cotangent") {

TEST_CASE("twist acts as a signed identity outside the band") {
  for (int k : {1, 2, 3}) {
    const TwistProfile pr = TwistProfile::standard(k);
    auto rng = make_rng(11, {static_cast<std::uint64_t>(k)});
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < 25; ++i) {
      const CotangentPoint in = sample(
          rng, 3, uniform_in(rng, 0.0, 0.999 * pr.transition_lo()));
      const CotangentPoint lo = dehn_twist(pr, in);
      CHECK_EQ((lo.q - sign * in.q).norm(), 0.0);
      CHECK_EQ((lo.p - sign * in.p).norm(), 0.0);
      const CotangentPoint far = sample(
          rng, 3, uniform_in(rng, 1.001 * pr.transition_hi(), 4.0));
      const CotangentPoint hi = dehn_twist(pr, far);
      CHECK((hi.q - far.q).norm() < 1e-12);
      CHECK((hi.p - far.p).norm() < 1e-12);
    }
  }
}

TEST_CASE("twist round trips and preserves the bundle constraints") {
  const TwistProfile pr = TwistProfile::standard(2);
  auto rng = make_rng(11, {2});
  for (int i = 0; i < 40; ++i) {
    const CotangentPoint in = sample(rng, 2, uniform_in(rng, 0.0, 3.0));
    const CotangentPoint out = dehn_twist(pr, in);
    CHECK(std::abs(out.momentum() - in.momentum()) < 1e-13);
    CHECK(out.residual() < 1e-13);
    const CotangentPoint back = dehn_twist_inverse(pr, out);
    CHECK((back.q - in.q).norm() < 1e-13);
    CHECK((back.p - in.p).norm() < 1e-13);
  }
}

TEST_CASE("twist powers compose additively") {
  const TwistProfile pr = TwistProfile::standard(3);
  auto rng = make_rng(11, {3});
  for (int i = 0; i < 20; ++i) {
    const CotangentPoint in = sample(rng, 2, uniform_in(rng, 0.0, 3.0));
    CotangentPoint iter = in;
    for (int j = 0; j < 5; ++j) iter = dehn_twist(pr, iter);
    const CotangentPoint direct = dehn_twist_power(pr, in, 5);
    CHECK((iter.q - direct.q).norm() < 1e-12);
    CHECK((iter.p - direct.p).norm() < 1e-12);
  }
}

// lambda = sum p dq; with nu the fiber dilation p d/dp, contraction of
// d(lambda) by nu gives lambda back, on arbitrary ambient vectors.
TEST_CASE("canonical form has the Liouville property") {
  const int n = 3;
  const OneForm lam = lambda_can(n);
  const TwoForm dlam = exterior_derivative(lam);
  auto rng = make_rng(11, {4});
  for (int i = 0; i < 30; ++i) {
    const VecXd x = gaussian_vector(rng, 2 * n);
    VecXd nu = VecXd::Zero(2 * n);
    nu.tail(n) = x.tail(n);
    const VecXd v = gaussian_vector(rng, 2 * n);
    CHECK(std::abs(dlam(x, nu, v) - lam(x, v)) < 1e-13);
  }
}

TEST_CASE("twisted cylinder form coefficients") {
  const int n = 2;
  const TwistProfile pr = TwistProfile::standard(2);
  const OneForm beta = beta_k(pr, n);
  // Flat tail: coefficient on dt is the tail value of h, dp terms vanish.
  VecXd x(2 * n + 1);
  x << 0.4, 1.0, 0.0, 0.0, 1.0;  // t, q = e1, p = e2, |p| = 1
  const VecXd a = beta.c0(x);
  CHECK(std::abs(a[0] - pr.h_k_tail()) < 1e-15);
  CHECK_EQ(a[1], 0.0);
  CHECK_EQ(a[2], 1.0);
  CHECK_EQ(a[3], 0.0);
  CHECK_EQ(a[4], 0.0);
  // Mid band: the dp coefficient is -t f'(|p|) p.
  const double y = 1.5 / pr.c_k;
  VecXd xm(2 * n + 1);
  xm << 0.4, 1.0, 0.0, 0.0, y;
  const VecXd am = beta.c0(xm);
  CHECK(std::abs(am[0] - h_k_eval(pr, y)) < 1e-15);
  CHECK(std::abs(am[4] + 0.4 * f_k_deriv(pr, y) * y) < 1e-13);
}

TEST_CASE("momentum frame rotation preserves momentum and base sphere") {
  const TwistProfile pr = TwistProfile::standard(2);
  auto rng = make_rng(11, {5});
  for (int i = 0; i < 30; ++i) {
    const CotangentPoint in = sample(rng, 3, uniform_in(rng, 0.0, 3.0));
    const double t = uniform_in(rng, -1.0, 2.0);
    const TorusPoint out = psi_k(pr, t, in);
    CHECK_EQ(out.t, t);
    CHECK(std::abs(out.x.momentum() - in.momentum()) < 1e-13);
    CHECK(out.x.residual() < 1e-12);
    const auto [tb, back] = psi_k_inverse(pr, out);
    CHECK_EQ(tb, t);
    CHECK((back.q - in.q).norm() < 1e-12);
    CHECK((back.p - in.p).norm() < 1e-12);
  }
}

TEST_CASE("frame rotation at time zero is the identity") {
  const TwistProfile pr = TwistProfile::standard(3);
  auto rng = make_rng(11, {6});
  const CotangentPoint in = sample(rng, 2, 0.05);
  const TorusPoint out = psi_k(pr, 0.0, in);
  CHECK_EQ((out.x.q - in.q).norm(), 0.0);
  CHECK_EQ((out.x.p - in.p).norm(), 0.0);
}

TEST_CASE("torus normalization reaches the fundamental domain") {
  const TwistProfile pr = TwistProfile::standard(2);
  auto rng = make_rng(11, {7});
  const CotangentPoint pt = sample(rng, 2, 0.7);

  // Even k * steps: plain shift.
  const TorusPoint m =
      normalize_torus_point(pr, TorusPoint{2.0, pt, TorusModel::M});
  CHECK_EQ(m.t, 0.0);
  CHECK_EQ((m.x.q - pt.q).norm(), 0.0);

  // Odd k, odd steps: antipodal flip.
  const TwistProfile pr1 = TwistProfile::standard(1);
  const TorusPoint m1 =
      normalize_torus_point(pr1, TorusPoint{1.25, pt, TorusModel::M});
  CHECK(std::abs(m1.t - 0.25) < 1e-15);
  CHECK_EQ((m1.x.q + pt.q).norm(), 0.0);
  CHECK_EQ((m1.x.p + pt.p).norm(), 0.0);

  // Twist model: one deck step is (t, x) ~ (t + 1, tau x).
  const CotangentPoint moved = dehn_twist(pr, pt);
  const TorusPoint tw = normalize_torus_point(
      pr, TorusPoint{1.3, moved, TorusModel::Twist});
  CHECK(std::abs(tw.t - 0.3) < 1e-15);
  CHECK((tw.x.q - pt.q).norm() < 1e-12);
  CHECK((tw.x.p - pt.p).norm() < 1e-12);

  // Inside the fundamental domain nothing moves.
  const TorusPoint fixed = normalize_torus_point(
      pr, TorusPoint{0.99, pt, TorusModel::Twist});
  CHECK_EQ(fixed.t, 0.99);
}

TEST_CASE("glued torus normalization uses the momentum-dependent period") {
  const TwistProfile pr = TwistProfile::standard(2);
  auto rng = make_rng(11, {8});
  // Mid-band momentum, so the deck twist genuinely rotates.
  const CotangentPoint pt = sample(rng, 2, 1.5 / pr.c_k);
  const double h = h_k_eval(pr, pt.momentum());
  const TorusPoint g = normalize_torus_point(
      pr, TorusPoint{0.2 * h + 2 * h, dehn_twist_power(pr, pt, 2),
                     TorusModel::Glued});
  CHECK(std::abs(g.t - 0.2 * h) < 1e-14);
  CHECK((g.x.q - pt.q).norm() < 1e-12);
  CHECK((g.x.p - pt.p).norm() < 1e-12);
}

TEST_CASE("stratified sampler covers all momentum bands") {
  const TwistProfile pr = TwistProfile::standard(2);
  auto rng = make_rng(11, {9});
  int low = 0, mid = 0, high = 0;
  for (int i = 0; i < 300; ++i) {
    const CotangentPoint pt = sample_cotangent_stratified(rng, pr, 2, 3.0);
    const double y = pt.momentum();
    CHECK(y >= 0.0);
    CHECK(y <= 3.0);
    CHECK(pt.residual() < 1e-13);
    if (y < pr.transition_lo())
      ++low;
    else if (y <= pr.transition_hi())
      ++mid;
    else
      ++high;
  }
  CHECK(low > 20);
  CHECK(mid > 20);
  CHECK(high > 20);
}

TEST_CASE("pack and unpack are inverse") {
  auto rng = make_rng(11, {10});
  const CotangentPoint pt = sample(rng, 3, 0.8);
  const TorusPoint tp{0.37, pt, TorusModel::Glued};
  const TorusPoint back = unpack_torus(pack_torus(tp), TorusModel::Glued);
  CHECK_EQ(back.t, tp.t);
  CHECK_EQ((back.x.q - pt.q).norm(), 0.0);
  CHECK_EQ(back.model, TorusModel::Glued);
  const CotangentPoint cb = unpack_cotangent(pack_cotangent(pt));
  CHECK_EQ((cb.p - pt.p).norm(), 0.0);
}

TEST_CASE("model names are stable") {
  CHECK_EQ(std::string(torus_model_name(TorusModel::M)), "M");
  CHECK_EQ(std::string(torus_model_name(TorusModel::Twist)), "twist");
  CHECK_EQ(std::string(torus_model_name(TorusModel::Glued)), "glued");
}

}  // TEST_SUITE
