// Deterministic sampling helpers. Every sample derives its own RNG stream
// from (seed, salt words) through splitmix64, so concurrent or reordered
// evaluation cannot change results.
#pragma once

#include <cstdint>
#include <random>

#include "openbook/types.hpp"

namespace obk {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-independent stream id: fold salts into the seed one splitmix step
// per word.
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> salts) {
  std::uint64_t s = splitmix64(seed);
  for (auto w : salts) s = splitmix64(s ^ w);
  return s;
}

inline std::mt19937_64 make_rng(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> salts) {
  return std::mt19937_64(derive_stream(seed, salts));
}

inline VecXd gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  VecXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

inline VecXd random_unit_vector(std::mt19937_64& rng, int n) {
  VecXd v = gaussian_vector(rng, n);
  while (v.norm() < 1e-8) v = gaussian_vector(rng, n);
  return v / v.norm();
}

// Orthonormal pair (u, v), Gaussian seeded then Gram-Schmidt.
inline std::pair<VecXd, VecXd> random_orthonormal_pair(std::mt19937_64& rng,
                                                       int n) {
  const VecXd u = random_unit_vector(rng, n);
  VecXd w = gaussian_vector(rng, n);
  w -= u.dot(w) * u;
  while (w.norm() < 1e-8) {
    w = gaussian_vector(rng, n);
    w -= u.dot(w) * u;
  }
  return {u, w / w.norm()};
}

// Haar-ish random rotation: QR of a Gaussian matrix, signs fixed so the
// diagonal of R is positive, determinant forced to +1.
inline MatXd random_rotation(std::mt19937_64& rng, int n) {
  MatXd M(n, n);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = g(rng);
  Eigen::HouseholderQR<MatXd> qr(M);
  MatXd Q = qr.householderQ();
  MatXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (R(i, i) < 0) Q.col(i) *= -1.0;
  if (Q.determinant() < 0) Q.col(n - 1) *= -1.0;
  return Q;
}

// Momentum magnitude stratified over the twist profile's regions:
// 25% in [lo_frac of the flat-bottom], 50% across the transition,
// 25% in the flat top, scaled to the caller's ceiling.
inline double stratified_momentum(std::mt19937_64& rng, double lo,
                                  double hi, double top) {
  const double u = uniform_in(rng, 0.0, 1.0);
  if (u < 0.25) return uniform_in(rng, 0.0, lo);
  if (u < 0.75) return uniform_in(rng, lo, hi);
  return uniform_in(rng, hi, top);
}

}  // namespace obk
