#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "openbook/forms.hpp"
#include "openbook/sampling.hpp"
#include "support/oracles.hpp"

using namespace obk;

namespace {

VecXd randvec(std::mt19937_64& rng, int d) { return gaussian_vector(rng, d); }

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("exterior derivative of p dq is dp wedge dq") {
  const OneForm lam = make_one_form(2, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> a(2);
    a << x[1], S(0);
    return a;
  });
  const TwoForm d = exterior_derivative(lam);
  auto rng = make_rng(3, {1});
  for (int i = 0; i < 20; ++i) {
    const VecXd x = randvec(rng, 2), u = randvec(rng, 2), v = randvec(rng, 2);
    CHECK(std::abs(d(x, u, v) - (u[1] * v[0] - v[1] * u[0])) < 1e-12);
  }
}

TEST_CASE("exterior derivative of an exact form vanishes") {
  // omega = d(x0 x1^2 + sin x2) on R^3.
  const OneForm omega = make_one_form(3, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> a(3);
    a << x[1] * x[1], 2 * x[0] * x[1], cos(x[2]);
    return a;
  });
  const TwoForm d = exterior_derivative(omega);
  auto rng = make_rng(3, {2});
  for (int i = 0; i < 20; ++i) {
    const VecXd x = randvec(rng, 3), u = randvec(rng, 3), v = randvec(rng, 3);
    CHECK(std::abs(d(x, u, v)) < 1e-12);
  }
}

TEST_CASE("d squared is zero") {
  const OneForm omega = make_one_form(3, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> a(3);
    a << sin(x[1] * x[2]), x[0] * x[0], exp(x[0] - x[1]);
    return a;
  });
  const DifferentialForm dd = exterior_derivative(exterior_derivative(omega));
  auto rng = make_rng(3, {3});
  for (int i = 0; i < 20; ++i) {
    const VecXd x = randvec(rng, 3);
    const VecXd u = randvec(rng, 3), v = randvec(rng, 3), w = randvec(rng, 3);
    CHECK(std::abs(dd.eval(x, {u, v, w})) < 1e-11);
  }
}

TEST_CASE("pullback composes contravariantly") {
  const SmoothMap f = make_smooth_map(2, 3, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> y(3);
    y << x[0] * x[1], x[0] + x[1], sin(x[0]);
    return y;
  });
  const SmoothMap g = make_smooth_map(3, 2, [](const auto& y) {
    using S = std::decay_t<decltype(y[0])>;
    VecX<S> z(2);
    z << y[0] * y[2], y[1] - y[2] * y[0];
    return z;
  });
  const OneForm omega = make_one_form(2, [](const auto& z) {
    using S = std::decay_t<decltype(z[0])>;
    VecX<S> a(2);
    a << z[1], exp(z[0]);
    return a;
  });
  // g after f, written out once more by hand.
  const SmoothMap gf = make_smooth_map(2, 2, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S y0 = x[0] * x[1];
    const S y1 = x[0] + x[1];
    const S y2 = sin(x[0]);
    VecX<S> z(2);
    z << y0 * y2, y1 - y2 * y0;
    return z;
  });
  const DifferentialForm lhs = pullback(gf, omega);
  const DifferentialForm rhs = pullback(f, pullback(g, as_form(omega)));
  auto rng = make_rng(3, {4});
  for (int i = 0; i < 20; ++i) {
    const VecXd x = randvec(rng, 2), v = randvec(rng, 2);
    CHECK(std::abs(lhs.eval(x, {v}) - rhs.eval(x, {v})) < 1e-10);
  }
}

TEST_CASE("pullback evaluates through the jacobian") {
  const SmoothMap f = make_smooth_map(2, 3, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> y(3);
    y << x[0] * x[0] - x[1], x[0] * x[1], cos(x[1]);
    return y;
  });
  const OneForm omega = make_one_form(3, [](const auto& y) {
    using S = std::decay_t<decltype(y[0])>;
    VecX<S> a(3);
    a << y[1], y[2] * y[0], y[0];
    return a;
  });
  const TwoForm dom = exterior_derivative(omega);
  const DifferentialForm p1 = pullback(f, omega);
  const DifferentialForm p2 = pullback(f, dom);
  auto rng = make_rng(3, {5});
  for (int i = 0; i < 10; ++i) {
    const VecXd x = randvec(rng, 2), u = randvec(rng, 2), v = randvec(rng, 2);
    const VecXd y = f.f0(x);
    const MatXd J = jacobian(f, x);
    CHECK(std::abs(p1.eval(x, {u}) - omega(y, VecXd(J * u))) < 1e-10);
    CHECK(std::abs(p2.eval(x, {u, v}) -
                   dom(y, VecXd(J * u), VecXd(J * v))) < 1e-10);
  }
}

TEST_CASE("wedge agrees with the brute-force permutation sum") {
  auto rng = make_rng(3, {6});
  const int d = 5;
  const OneForm a = make_one_form(d, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> c(5);
    c << x[1], x[2] * x[0], S(1), sin(x[3]), x[4] * x[4];
    return c;
  });
  const OneForm b = make_one_form(d, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> c(5);
    c << S(2), x[0], x[1] - x[3], S(0), exp(x[2]);
    return c;
  });
  const TwoForm da = exterior_derivative(a);
  const DifferentialForm w =
      wedge(as_form(da), wedge(as_form(a), as_form(b)));
  for (int trial = 0; trial < 8; ++trial) {
    const VecXd x = randvec(rng, d);
    std::vector<VecXd> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(randvec(rng, d));
    const oracle::AnyForm oa{1, [&a, &x](const std::vector<VecXd>& args) {
                               return a(x, args[0]);
                             }};
    const oracle::AnyForm ob{1, [&b, &x](const std::vector<VecXd>& args) {
                               return b(x, args[0]);
                             }};
    const oracle::AnyForm oda{2, [&da, &x](const std::vector<VecXd>& args) {
                                return da(x, args[0], args[1]);
                              }};
    const double want = oracle::brute_wedge({oda, oa, ob}, vs);
    CHECK(std::abs(w.eval(x, vs) - want) < 1e-10);
  }
}

TEST_CASE("wedge is graded anticommutative on one-forms") {
  auto rng = make_rng(3, {7});
  const OneForm a = make_one_form(3, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> c(3);
    c << x[1], x[2], x[0];
    return c;
  });
  const OneForm b = make_one_form(3, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> c(3);
    c << x[0] * x[0], S(1), x[1];
    return c;
  });
  const DifferentialForm ab = wedge(as_form(a), as_form(b));
  const DifferentialForm ba = wedge(as_form(b), as_form(a));
  const DifferentialForm aa = wedge(as_form(a), as_form(a));
  for (int i = 0; i < 10; ++i) {
    const VecXd x = randvec(rng, 3), u = randvec(rng, 3), v = randvec(rng, 3);
    CHECK(std::abs(ab.eval(x, {u, v}) + ba.eval(x, {u, v})) < 1e-12);
    CHECK(std::abs(aa.eval(x, {u, v})) < 1e-12);
  }
}

TEST_CASE("tangent basis of the circle") {
  const ConstraintManifold circle{
      2,
      {make_smooth_map(2, 1, [](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        VecX<S> c(1);
        c << x[0] * x[0] + x[1] * x[1] - 1;
        return c;
      })},
      1e-9};
  CHECK_EQ(circle.dim(), 1);
  for (double th : {0.0, 0.7, 2.0, 4.4}) {
    const VecXd x = (VecXd(2) << std::cos(th), std::sin(th)).finished();
    const MatXd B = tangent_basis(circle, x);
    REQUIRE_EQ(B.cols(), 1);
    CHECK(std::abs(B.col(0).norm() - 1.0) < 1e-12);
    CHECK(std::abs(B.col(0).dot(x)) < 1e-12);
  }
}

TEST_CASE("tangent basis rejects off-manifold points") {
  const ConstraintManifold circle{
      2,
      {make_smooth_map(2, 1, [](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        VecX<S> c(1);
        c << x[0] * x[0] + x[1] * x[1] - 1;
        return c;
      })},
      1e-9};
  const VecXd far = (VecXd(2) << 1.5, 0.0).finished();
  CHECK_THROWS_AS(tangent_basis(circle, far), std::domain_error);
}

TEST_CASE("contact volume of the rotation form on the circle") {
  const OneForm alpha = make_one_form(2, [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    VecX<S> a(2);
    a << -x[1], x[0];
    return a;
  });
  const ConstraintManifold circle{
      2,
      {make_smooth_map(2, 1, [](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        VecX<S> c(1);
        c << x[0] * x[0] + x[1] * x[1] - 1;
        return c;
      })},
      1e-9};
  for (double th : {0.1, 1.0, 3.0, 5.5}) {
    const VecXd x = (VecXd(2) << std::cos(th), std::sin(th)).finished();
    CHECK(std::abs(contact_volume(alpha, circle, x) - 1.0) < 1e-12);
  }
}

TEST_CASE("dimension mismatches are reported") {
  const OneForm omega = make_one_form(3, [](const auto& x) {
    return VecX<std::decay_t<decltype(x[0])>>(x);
  });
  const VecXd x3 = VecXd::Zero(3);
  const VecXd v2 = VecXd::Zero(2);
  CHECK_THROWS_AS(omega(x3, v2), std::invalid_argument);
  const SmoothMap f = make_smooth_map(2, 2, [](const auto& x) {
    return VecX<std::decay_t<decltype(x[0])>>(x);
  });
  CHECK_THROWS_AS(differential(f, x3, x3), std::invalid_argument);
}

}  // TEST_SUITE
