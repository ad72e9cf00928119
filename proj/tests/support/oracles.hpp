// Independent reference implementations used only by tests: adaptive
// Simpson quadrature, central finite differences, and a brute-force
// permutation-sum wedge evaluator. Deliberately written with different
// algorithms than the library so agreement is evidence, not tautology.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double simpson_panel(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_panel(f, a, m, fa, flm, fm);
  const double right = simpson_panel(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-14) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_panel(f, a, b, fa, fm, fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Central finite difference of a vector map in one direction.
inline Eigen::VectorXd fd_directional(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, const Eigen::VectorXd& v, double h = 1e-6) {
  return (f(x + h * v) - f(x - h * v)) / (2.0 * h);
}

inline double fd_scalar(const std::function<double(double)>& f, double x,
                        double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Brute-force wedge of 1-forms and 2-forms by summing over every
// permutation of the arguments with sign, then dividing by the product of
// the factor degrees' factorials. Matches the shuffle convention.
struct AnyForm {
  int degree;
  std::function<double(const std::vector<Eigen::VectorXd>&)> eval;  // at a fixed point
};

inline int permutation_sign(std::vector<int> perm) {
  int sign = 1;
  for (size_t i = 0; i < perm.size(); ++i) {
    while (perm[i] != static_cast<int>(i)) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  }
  return sign;
}

inline double brute_wedge(const std::vector<AnyForm>& fs,
                          const std::vector<Eigen::VectorXd>& vs) {
  int total = 0;
  for (const auto& f : fs) total += f.degree;
  std::vector<int> idx(total);
  for (int i = 0; i < total; ++i) idx[i] = i;
  double denom = 1.0;
  for (const auto& f : fs) {
    double fact = 1.0;
    for (int j = 2; j <= f.degree; ++j) fact *= j;
    denom *= fact;
  }
  double acc = 0.0;
  std::vector<int> perm = idx;
  do {
    double term = permutation_sign(perm);
    int off = 0;
    for (const auto& f : fs) {
      std::vector<Eigen::VectorXd> args;
      args.reserve(f.degree);
      for (int j = 0; j < f.degree; ++j) args.push_back(vs[perm[off + j]]);
      term *= f.eval(args);
      off += f.degree;
    }
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc / denom;
}

}  // namespace oracle
