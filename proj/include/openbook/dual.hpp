// Forward-mode dual numbers, nestable for second derivatives.
// Dual<double> carries one directional derivative; Dual<Dual<double>>
// carries a mixed second derivative in .der.der.
#pragma once

#include <cmath>
#include <type_traits>

#include <Eigen/Core>

namespace obk {

template <typename T>
struct Dual {
  T val{};
  T der{};

  constexpr Dual() = default;
  constexpr Dual(const T& v) : val(v) {}
  constexpr Dual(const T& v, const T& d) : val(v), der(d) {}

  template <typename U>
    requires(std::is_arithmetic_v<U> && !std::is_same_v<U, T>)
  constexpr Dual(U v) : val(static_cast<T>(v)) {}

  Dual& operator+=(const Dual& o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    der = der * o.val + val * o.der;
    val = val * o.val;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    der = (der * o.val - val * o.der) / (o.val * o.val);
    val = val / o.val;
    return *this;
  }
};

template <typename T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.val + b.val, a.der + b.der};
}
template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.val - b.val, a.der - b.der};
}
template <typename T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.val * b.val, a.der * b.val + a.val * b.der};
}
template <typename T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
}
template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a) {
  return {-a.val, -a.der};
}
template <typename T>
constexpr Dual<T> operator+(const Dual<T>& a) {
  return a;
}

template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator+(const Dual<T>& a, U b) {
  return {a.val + T(b), a.der};
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator+(U a, const Dual<T>& b) {
  return {T(a) + b.val, b.der};
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator-(const Dual<T>& a, U b) {
  return {a.val - T(b), a.der};
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator-(U a, const Dual<T>& b) {
  return {T(a) - b.val, -b.der};
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator*(const Dual<T>& a, U b) {
  return {a.val * T(b), a.der * T(b)};
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator*(U a, const Dual<T>& b) {
  return {T(a) * b.val, T(a) * b.der};
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator/(const Dual<T>& a, U b) {
  return {a.val / T(b), a.der / T(b)};
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr Dual<T> operator/(U a, const Dual<T>& b) {
  return Dual<T>(T(a)) / b;
}

template <typename T>
constexpr bool operator==(const Dual<T>& a, const Dual<T>& b) {
  return a.val == b.val;
}
template <typename T>
constexpr bool operator!=(const Dual<T>& a, const Dual<T>& b) {
  return a.val != b.val;
}
template <typename T>
constexpr bool operator<(const Dual<T>& a, const Dual<T>& b) {
  return a.val < b.val;
}
template <typename T>
constexpr bool operator>(const Dual<T>& a, const Dual<T>& b) {
  return a.val > b.val;
}
template <typename T>
constexpr bool operator<=(const Dual<T>& a, const Dual<T>& b) {
  return a.val <= b.val;
}
template <typename T>
constexpr bool operator>=(const Dual<T>& a, const Dual<T>& b) {
  return a.val >= b.val;
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr bool operator<(const Dual<T>& a, U b) {
  return a.val < T(b);
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr bool operator>(const Dual<T>& a, U b) {
  return a.val > T(b);
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr bool operator<=(const Dual<T>& a, U b) {
  return a.val <= T(b);
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr bool operator>=(const Dual<T>& a, U b) {
  return a.val >= T(b);
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr bool operator<(U a, const Dual<T>& b) {
  return T(a) < b.val;
}
template <typename T, typename U>
  requires std::is_arithmetic_v<U>
constexpr bool operator>(U a, const Dual<T>& b) {
  return T(a) > b.val;
}

using std::abs;
using std::atan2;
using std::cos;
using std::exp;
using std::floor;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

template <typename T>
Dual<T> sqrt(const Dual<T>& x) {
  T r = sqrt(x.val);
  return {r, x.der / (2 * r)};
}
template <typename T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.val), x.der * cos(x.val)};
}
template <typename T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.val), -x.der * sin(x.val)};
}
template <typename T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.val);
  return {e, x.der * e};
}
template <typename T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.val), x.der / x.val};
}
template <typename T>
Dual<T> abs(const Dual<T>& x) {
  return x.val < T(0) ? -x : x;
}
template <typename T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  return {atan2(y.val, x.val),
          (y.der * x.val - y.val * x.der) / (x.val * x.val + y.val * y.val)};
}
template <typename T>
Dual<T> floor(const Dual<T>& x) {
  return {floor(x.val), T(0)};
}
template <typename T>
Dual<T> pow(const Dual<T>& x, double e) {
  return {pow(x.val, e), x.der * e * pow(x.val, e - 1.0)};
}

// Integer power by repeated multiplication; exact for dual chains.
template <typename S>
S ipow(const S& x, int n) {
  S r(1);
  S b = x;
  int m = n;
  while (m > 0) {
    if (m & 1) r = r * b;
    b = b * b;
    m >>= 1;
  }
  return r;
}

// Strip/inspect helpers.
inline double value_of(double x) { return x; }
template <typename T>
double value_of(const Dual<T>& x) {
  return value_of(x.val);
}

using D1 = Dual<double>;
using D2 = Dual<Dual<double>>;

}  // namespace obk

namespace Eigen {

template <typename T>
struct NumTraits<obk::Dual<T>> : NumTraits<T> {
  typedef obk::Dual<T> Real;
  typedef obk::Dual<T> NonInteger;
  typedef obk::Dual<T> Nested;
  typedef obk::Dual<T> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(NumTraits<T>::epsilon()); }
  static inline Real dummy_precision() {
    return Real(NumTraits<T>::dummy_precision());
  }
  static inline Real highest() { return Real(NumTraits<T>::highest()); }
  static inline Real lowest() { return Real(NumTraits<T>::lowest()); }
  static inline int digits10() { return NumTraits<T>::digits10(); }
};

}  // namespace Eigen
