// Shared aliases and error types.
#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Dense>

#include "openbook/dual.hpp"

namespace obk {

template <typename S>
using VecX = Eigen::Vector<S, Eigen::Dynamic>;
template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using VecXd = VecX<double>;
using MatXd = MatX<double>;

// Thrown when a requested inversion target lies outside the function range.
class OutOfRangeTarget : public std::domain_error {
 public:
  explicit OutOfRangeTarget(const std::string& what) : std::domain_error(what) {}
};

// Thrown when a point expected on the binding fails its defining equations.
class BindingError : public std::runtime_error {
 public:
  explicit BindingError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the circle-coordinate of a point is undefined (z0 = 0).
class SingularOrbitError : public std::runtime_error {
 public:
  explicit SingularOrbitError(const std::string& what)
      : std::runtime_error(what) {}
};

template <typename S>
S dot(const VecX<S>& a, const VecX<S>& b) {
  S r(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

template <typename S>
S squared_norm(const VecX<S>& v) {
  return dot<S>(v, v);
}

}  // namespace obk
