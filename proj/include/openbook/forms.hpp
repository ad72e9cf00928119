// Points, smooth maps with dual-arithmetic differentials, differential
// forms (coefficient-carrying 1- and 2-forms plus generic evaluator
// forms), pullback, exterior derivative, wedge evaluation by shuffle
// sums, tangent bases of constraint manifolds, and the contact-volume
// nondegeneracy test.
#pragma once

#include <functional>
#include <memory>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "openbook/dual.hpp"
#include "openbook/types.hpp"

namespace obk {

// A smooth map held at three scalar levels. f1/f2 run the same body on
// dual scalars, which is what makes differentials exact.
struct SmoothMap {
  int domain_dim = 0;
  int codomain_dim = 0;
  std::function<VecX<double>(const VecX<double>&)> f0;
  std::function<VecX<D1>(const VecX<D1>&)> f1;
  std::function<VecX<D2>(const VecX<D2>&)> f2;
};

template <typename F>
SmoothMap make_smooth_map(int dom, int cod, F f) {
  SmoothMap m;
  m.domain_dim = dom;
  m.codomain_dim = cod;
  m.f0 = [f](const VecX<double>& x) { return f(x); };
  m.f1 = [f](const VecX<D1>& x) { return f(x); };
  m.f2 = [f](const VecX<D2>& x) { return f(x); };
  return m;
}

inline void check_dim(int got, int want, const char* where) {
  if (got != want) {
    std::ostringstream msg;
    msg << where << ": dimension mismatch (got " << got << ", want " << want
        << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Exact directional derivative D f(x)[v].
inline VecXd differential(const SmoothMap& map, const VecXd& x,
                          const VecXd& v) {
  check_dim(static_cast<int>(x.size()), map.domain_dim, "differential");
  check_dim(static_cast<int>(v.size()), map.domain_dim, "differential");
  VecX<D1> seed(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) seed[i] = D1(x[i], v[i]);
  VecX<D1> out = map.f1(seed);
  VecXd der(out.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) der[i] = out[i].der;
  return der;
}

inline MatXd jacobian(const SmoothMap& map, const VecXd& x) {
  MatXd J(map.codomain_dim, map.domain_dim);
  for (int i = 0; i < map.domain_dim; ++i) {
    VecXd e = VecXd::Zero(map.domain_dim);
    e[i] = 1.0;
    J.col(i) = differential(map, x, e);
  }
  return J;
}

// 1-form with coordinate coefficients a(x): omega = sum a_i dx_i.
struct OneForm {
  int dim = 0;
  std::function<VecX<double>(const VecX<double>&)> c0;
  std::function<VecX<D1>(const VecX<D1>&)> c1;
  std::function<VecX<D2>(const VecX<D2>&)> c2;

  double operator()(const VecXd& x, const VecXd& v) const {
    check_dim(static_cast<int>(v.size()), dim, "OneForm");
    return c0(x).dot(v);
  }
};

template <typename F>
OneForm make_one_form(int dim, F coeffs) {
  OneForm w;
  w.dim = dim;
  w.c0 = [coeffs](const VecX<double>& x) { return coeffs(x); };
  w.c1 = [coeffs](const VecX<D1>& x) { return coeffs(x); };
  w.c2 = [coeffs](const VecX<D2>& x) { return coeffs(x); };
  return w;
}

// 2-form with antisymmetric coefficient matrix A(x): omega(u,v) = u.(A v).
// Coefficients are carried at value and first-dual level; that is enough
// to take one more exterior derivative (for the d^2 = 0 check).
struct TwoForm {
  int dim = 0;
  std::function<MatX<double>(const VecX<double>&)> a0;
  std::function<MatX<D1>(const VecX<D1>&)> a1;

  double operator()(const VecXd& x, const VecXd& u, const VecXd& v) const {
    check_dim(static_cast<int>(u.size()), dim, "TwoForm");
    check_dim(static_cast<int>(v.size()), dim, "TwoForm");
    return u.dot(a0(x) * v);
  }
};

namespace detail {

// Coefficient matrix of d(omega) at scalar level S, using coefficients of
// omega one dual level up: A_ij = d_i a_j - d_j a_i.
template <typename S, typename CoeffUp>
MatX<S> d_coeff_matrix(int dim, CoeffUp&& coeff_up, const VecX<S>& x) {
  MatX<Dual<S>> grads(dim, dim);  // grads(i, j) = value/der of a_j along e_i
  MatX<S> A(dim, dim);
  for (int i = 0; i < dim; ++i) {
    VecX<Dual<S>> seed(dim);
    for (int j = 0; j < dim; ++j)
      seed[j] = Dual<S>(x[j], S(i == j ? 1 : 0));
    VecX<Dual<S>> a = coeff_up(seed);
    for (int j = 0; j < dim; ++j) grads(i, j) = a[j];
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      A(i, j) = grads(i, j).der - grads(j, i).der;
  return A;
}

}  // namespace detail

inline TwoForm exterior_derivative(const OneForm& w) {
  TwoForm d;
  d.dim = w.dim;
  const int dim = w.dim;
  d.a0 = [dim, c = w.c1](const VecX<double>& x) {
    return detail::d_coeff_matrix<double>(dim, c, x);
  };
  d.a1 = [dim, c = w.c2](const VecX<D1>& x) {
    return detail::d_coeff_matrix<D1>(dim, c, x);
  };
  return d;
}

// Generic degree-l form as a plain evaluator; the common currency for
// pullback and wedge.
struct DifferentialForm {
  int dim = 0;
  int degree = 0;
  std::function<double(const VecXd&, const std::vector<VecXd>&)> eval;

  double operator()(const VecXd& x, const std::vector<VecXd>& vs) const {
    if (static_cast<int>(vs.size()) != degree)
      throw std::invalid_argument("DifferentialForm: wrong argument count");
    return eval(x, vs);
  }
};

inline DifferentialForm as_form(const OneForm& w) {
  DifferentialForm f;
  f.dim = w.dim;
  f.degree = 1;
  f.eval = [w](const VecXd& x, const std::vector<VecXd>& vs) {
    return w(x, vs[0]);
  };
  return f;
}

inline DifferentialForm as_form(const TwoForm& w) {
  DifferentialForm f;
  f.dim = w.dim;
  f.degree = 2;
  f.eval = [w](const VecXd& x, const std::vector<VecXd>& vs) {
    return w(x, vs[0], vs[1]);
  };
  return f;
}

// d of a 2-form, as an evaluator (degree 3). For constant vector fields
// d(omega)(u,v,w) = D_u omega(v,w) - D_v omega(u,w) + D_w omega(u,v).
inline DifferentialForm exterior_derivative(const TwoForm& w) {
  if (!w.a1)
    throw std::logic_error(
        "exterior_derivative: 2-form carries no dual coefficients");
  DifferentialForm f;
  f.dim = w.dim;
  f.degree = 3;
  f.eval = [w](const VecXd& x, const std::vector<VecXd>& vs) {
    auto dir_der = [&](const VecXd& dir) {
      VecX<D1> seed(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i)
        seed[i] = D1(x[i], dir[i]);
      MatX<D1> A = w.a1(seed);
      MatXd Ad(A.rows(), A.cols());
      for (Eigen::Index r = 0; r < A.rows(); ++r)
        for (Eigen::Index c = 0; c < A.cols(); ++c) Ad(r, c) = A(r, c).der;
      return Ad;
    };
    const MatXd Au = dir_der(vs[0]);
    const MatXd Av = dir_der(vs[1]);
    const MatXd Aw = dir_der(vs[2]);
    return vs[1].dot(Au * vs[2]) - vs[0].dot(Av * vs[2]) +
           vs[0].dot(Aw * vs[1]);
  };
  return f;
}

// Pullback as an evaluator on the map's domain: vectors are pushed forward
// with the exact differential, the form is evaluated at the image point.
inline DifferentialForm pullback(const SmoothMap& map,
                                 const DifferentialForm& form) {
  check_dim(form.dim, map.codomain_dim, "pullback");
  DifferentialForm f;
  f.dim = map.domain_dim;
  f.degree = form.degree;
  f.eval = [map, form](const VecXd& x, const std::vector<VecXd>& vs) {
    const VecXd y = map.f0(x);
    std::vector<VecXd> ws;
    ws.reserve(vs.size());
    for (const auto& v : vs) ws.push_back(differential(map, x, v));
    return form.eval(y, ws);
  };
  return f;
}

inline DifferentialForm pullback(const SmoothMap& map, const OneForm& w) {
  return pullback(map, as_form(w));
}
inline DifferentialForm pullback(const SmoothMap& map, const TwoForm& w) {
  return pullback(map, as_form(w));
}

namespace detail {

inline int concat_inversion_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

struct BoundFactor {
  int degree;
  std::function<double(const std::vector<int>&)> eval;  // ascending indices
};

// Shuffle sum: distribute argument indices over the factors, each block
// ascending, each shuffle counted once with its sign.
inline double shuffle_sum(const std::vector<BoundFactor>& factors,
                          int total) {
  std::vector<int> remaining(total);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> assigned;
  assigned.reserve(total);
  double acc = 0.0;

  std::function<void(size_t, const std::vector<int>&, double)> rec =
      [&](size_t fi, const std::vector<int>& avail, double partial) {
        if (fi == factors.size()) {
          acc += partial * concat_inversion_sign(assigned);
          return;
        }
        const int d = factors[fi].degree;
        const int m = static_cast<int>(avail.size());
        std::vector<int> pick(d);
        std::function<void(int, int)> choose = [&](int start, int got) {
          if (got == d) {
            std::vector<int> rest;
            rest.reserve(m - d);
            std::vector<bool> used(m, false);
            // mark picks by position
            for (int t = 0, pi = 0; t < m; ++t) {
              if (pi < d && avail[t] == pick[pi]) {
                used[t] = true;
                ++pi;
              }
            }
            for (int t = 0; t < m; ++t)
              if (!used[t]) rest.push_back(avail[t]);
            const double val =
                factors[fi].eval(std::vector<int>(pick.begin(), pick.end()));
            if (val != 0.0) {
              for (int v : pick) assigned.push_back(v);
              rec(fi + 1, rest, partial * val);
              assigned.resize(assigned.size() - d);
            }
            return;
          }
          for (int t = start; t < m; ++t) {
            pick[got] = avail[t];
            choose(t + 1, got + 1);
          }
        };
        choose(0, 0);
      };
  rec(0, remaining, 1.0);
  return acc;
}

}  // namespace detail

constexpr int kMaxWedgeDegree = 7;

inline double wedge_eval(const std::vector<DifferentialForm>& forms,
                         const VecXd& x, const std::vector<VecXd>& vs) {
  int total = 0;
  for (const auto& f : forms) total += f.degree;
  if (total > kMaxWedgeDegree)
    throw std::invalid_argument("wedge_eval: dimension too large");
  if (static_cast<int>(vs.size()) != total)
    throw std::invalid_argument("wedge_eval: degree mismatch");
  std::vector<detail::BoundFactor> bound;
  bound.reserve(forms.size());
  for (const auto& f : forms) {
    bound.push_back(detail::BoundFactor{
        f.degree, [&f, &x, &vs](const std::vector<int>& idx) {
          std::vector<VecXd> args;
          args.reserve(idx.size());
          for (int i : idx) args.push_back(vs[i]);
          return f.eval(x, args);
        }});
  }
  return detail::shuffle_sum(bound, total);
}

inline DifferentialForm wedge(const DifferentialForm& a,
                              const DifferentialForm& b) {
  check_dim(b.dim, a.dim, "wedge");
  DifferentialForm f;
  f.dim = a.dim;
  f.degree = a.degree + b.degree;
  f.eval = [a, b](const VecXd& x, const std::vector<VecXd>& vs) {
    return wedge_eval({a, b}, x, vs);
  };
  return f;
}

// Zero set of a list of scalar constraints.
struct ConstraintManifold {
  int ambient_dim = 0;
  std::vector<SmoothMap> constraints;
  double gate = 1e-9;

  int dim() const {
    return ambient_dim - static_cast<int>(constraints.size());
  }
};

inline double constraint_residual(const ConstraintManifold& mfd,
                                  const VecXd& x) {
  double r = 0.0;
  for (const auto& c : mfd.constraints)
    r = std::max(r, std::abs(c.f0(x)[0]));
  return r;
}

inline MatXd constraint_jacobian(const ConstraintManifold& mfd,
                                 const VecXd& x) {
  const int m = static_cast<int>(mfd.constraints.size());
  MatXd J(m, mfd.ambient_dim);
  for (int i = 0; i < m; ++i)
    J.row(i) = jacobian(mfd.constraints[i], x).row(0);
  return J;
}

// Orthonormal basis of the tangent space: the trailing columns of the full
// Q factor of a column-pivoted QR of the transposed constraint Jacobian.
// Deterministic for a given point.
inline MatXd tangent_basis(const ConstraintManifold& mfd, const VecXd& x) {
  const double res = constraint_residual(mfd, x);
  if (res > mfd.gate) {
    std::ostringstream msg;
    msg << "tangent_basis: point violates constraints (residual " << res
        << " > gate " << mfd.gate << ")";
    throw std::domain_error(msg.str());
  }
  const int m = static_cast<int>(mfd.constraints.size());
  const int N = mfd.ambient_dim;
  const MatXd J = constraint_jacobian(mfd, x);
  Eigen::ColPivHouseholderQR<MatXd> qr(J.transpose());
  if (qr.rank() < m)
    throw std::domain_error("tangent_basis: constraint Jacobian rank deficient");
  MatXd Q = qr.householderQ() * MatXd::Identity(N, N);
  return Q.rightCols(N - m);
}

// Same basis, but with a cross-sample consistent orientation: the frame
// [unit constraint gradients (Gram-Schmidt, fixed order) | basis] is made
// positively oriented in the ambient space by flipping the last column if
// needed. Sign-constancy checks of volume forms need this; pointwise
// identities do not.
inline MatXd oriented_tangent_basis(const ConstraintManifold& mfd,
                                    const VecXd& x) {
  MatXd B = tangent_basis(mfd, x);
  const int m = static_cast<int>(mfd.constraints.size());
  const int N = mfd.ambient_dim;
  MatXd G = constraint_jacobian(mfd, x).transpose();  // N x m
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) G.col(i) -= G.col(j).dot(G.col(i)) * G.col(j);
    G.col(i).normalize();
  }
  MatXd M(N, N);
  M.leftCols(m) = G;
  M.rightCols(N - m) = B;
  if (M.determinant() < 0) B.col(B.cols() - 1) *= -1.0;
  return B;
}

// alpha wedge (d alpha)^l evaluated on the oriented tangent basis of an
// odd-dimensional manifold; for 1-dimensional manifolds the absolute
// pairing |alpha(e)| is returned instead.
inline double contact_volume(const OneForm& alpha,
                             const ConstraintManifold& mfd, const VecXd& x) {
  const int d = mfd.dim();
  if (d % 2 == 0)
    throw std::invalid_argument("contact_volume: even-dimensional manifold");
  if (d > kMaxWedgeDegree)
    throw std::invalid_argument("contact_volume: dimension too large");
  const MatXd B = oriented_tangent_basis(mfd, x);
  if (d == 1) return std::abs(alpha(x, B.col(0)));
  const int l = (d - 1) / 2;
  std::vector<VecXd> vs;
  vs.reserve(d);
  for (int i = 0; i < d; ++i) vs.push_back(B.col(i));
  // Coefficients of alpha and d(alpha) depend only on x; fix them once so
  // the shuffle sum is pure linear algebra.
  const VecXd a = alpha.c0(x);
  const MatXd A = exterior_derivative(alpha).a0(x);
  std::vector<detail::BoundFactor> factors;
  factors.push_back(detail::BoundFactor{
      1, [&](const std::vector<int>& idx) { return a.dot(vs[idx[0]]); }});
  for (int i = 0; i < l; ++i)
    factors.push_back(
        detail::BoundFactor{2, [&](const std::vector<int>& idx) {
          return vs[idx[0]].dot(A * vs[idx[1]]);
        }});
  return detail::shuffle_sum(factors, d);
}

}  // namespace obk
