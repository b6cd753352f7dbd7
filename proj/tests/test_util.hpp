#pragma once

// Shared test helpers: a deterministic RNG for random states/observables and
// the analytic reference curves for the GHZ/W correlators. The references are
// independent of the library's density-matrix code path; tests compare the
// numeric pipeline against them.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "tricorr/complex_matrix.hpp"
#include "tricorr/correlators.hpp"
#include "tricorr/states.hpp"

namespace testutil {

using tricorr::cplx;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ULL + 1) {}

  double uniform() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

inline tricorr::PureState3Q random_pure_state(Rng& rng) {
  std::array<cplx, 8> amps;
  double n2 = 0.0;
  for (auto& a : amps) {
    a = cplx{rng.gaussian(), rng.gaussian()};
    n2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amps) a *= inv;
  return tricorr::PureState3Q::from_amplitudes(amps);
}

inline std::array<cplx, 2> random_qubit_state(Rng& rng) {
  cplx a{rng.gaussian(), rng.gaussian()}, b{rng.gaussian(), rng.gaussian()};
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

inline tricorr::PureState3Q random_product_state(Rng& rng) {
  const auto q1 = random_qubit_state(rng);
  const auto q2 = random_qubit_state(rng);
  const auto q3 = random_qubit_state(rng);
  std::array<cplx, 8> amps;
  for (std::size_t i = 0; i < 8; ++i) {
    amps[i] = q1[(i >> 2) & 1] * q2[(i >> 1) & 1] * q3[i & 1];
  }
  return tricorr::PureState3Q::from_amplitudes(amps);
}

inline tricorr::ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  tricorr::ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = rng.gaussian();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx v{rng.gaussian(), rng.gaussian()};
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

// Orthonormal qubit basis from a random state and its orthogonal complement.
inline tricorr::QubitBasis random_qubit_basis(Rng& rng) {
  const auto v = random_qubit_state(rng);
  return tricorr::QubitBasis{{{{v[0], v[1]}, {-std::conj(v[1]), std::conj(v[0])}}}};
}

// --- analytic reference curves ------------------------------------------------

// Pearson correlator of the generalized GHZ state with X observables.
inline double ghz_pcc_x(double a, double b) { return 2.0 * a * b; }

// Mutual information of the generalized GHZ state in the X product basis.
inline double ghz_mi_x(double a, double b) {
  const double t = 2.0 * a * b;
  double v = 0.0;
  if (1.0 + t > 0.0) v += 0.5 * (1.0 + t) * std::log2(1.0 + t);
  if (1.0 - t > 0.0) v += 0.5 * (1.0 - t) * std::log2(1.0 - t);
  return v;
}

// Per-cut Pearson correlators of the generalized W state with |+><+|
// observables; the tripartite value is (cut1 * cut23^2)^(1/3).
inline double w_pcc_plus_cut1(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  return std::numbers::sqrt2 * std::sin(2.0 * theta) /
         std::sqrt((1.0 + s2) * (2.0 + c2));
}
inline double w_pcc_plus_cut23(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double s2t = std::sin(2.0 * theta);
  return (s2t + std::numbers::sqrt2 * s2) /
         std::sqrt(6.0 + 2.0 * std::numbers::sqrt2 * s2t - s2t * s2t);
}
inline double w_pcc_plus_tripartite(double theta) {
  const double c1 = w_pcc_plus_cut1(theta);
  const double c23 = w_pcc_plus_cut23(theta);
  return std::cbrt(c1 * c23 * c23);
}

// Mutual information of the generalized W state, X product basis, per cut.
inline double w_mi_x_cut1(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double m = std::cos(theta) + std::numbers::sqrt2 * std::sin(theta);
  const double n = std::cos(theta) - std::numbers::sqrt2 * std::sin(theta);
  const double m2 = m * m, n2 = n * n;
  double v = 0.0;
  if (m2 > 0.0) v += 0.25 * m2 * std::log2(m2 / (1.0 + s2));
  if (n2 > 0.0) v += 0.25 * n2 * std::log2(n2 / (1.0 + s2));
  return v;
}
inline double w_mi_x_cut23(double theta) {
  const double m = std::cos(theta) + std::numbers::sqrt2 * std::sin(theta);
  const double n = std::cos(theta) - std::numbers::sqrt2 * std::sin(theta);
  const double m2 = m * m, n2 = n * n;
  const double c2 = std::cos(theta) * std::cos(theta);
  const double plus = 2.0 + std::numbers::sqrt2 * std::sin(2.0 * theta);
  const double minus = 2.0 - std::numbers::sqrt2 * std::sin(2.0 * theta);
  double v = 0.0;
  if (m2 > 0.0) v += 0.25 * m2 * std::log2(2.0 * m2 / plus);
  if (n2 > 0.0) v += 0.25 * n2 * std::log2(2.0 * n2 / minus);
  if (c2 > 0.0) v += 0.25 * c2 * std::log2(4.0 * c2 * c2 / (plus * minus));
  return v;
}
inline double w_mi_x_tripartite(double theta) {
  const double i1 = w_mi_x_cut1(theta);
  const double i23 = w_mi_x_cut23(theta);
  if (i1 <= 0.0 || i23 <= 0.0) return 0.0;
  return std::cbrt(i1 * i23 * i23);
}

// Mutual information of the generalized W state, Z product basis, per cut.
inline double w_mi_z_cut1(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  double v = 0.0;
  if (c2 > 0.0) v -= c2 * std::log2(c2);
  if (s2 > 0.0) v -= s2 * std::log2(s2);
  return v;
}
inline double w_mi_z_cut23(double theta) {
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double g = 4.0 / (3.0 + std::cos(2.0 * theta));
  double v = c2 * std::log2(g);
  if (s2 > 0.0) v += 0.5 * s2 * (std::log2(g) - std::log2(0.5 * s2));
  return v;
}
inline double w_mi_z_tripartite(double theta) {
  const double i1 = w_mi_z_cut1(theta);
  const double i23 = w_mi_z_cut23(theta);
  if (i1 <= 0.0 || i23 <= 0.0) return 0.0;
  return std::cbrt(i1 * i23 * i23);
}

// Mutual predictability of the generalized W state in the X basis.
inline double w_mp_x(double theta) {
  return (3.0 - std::cos(2.0 * theta) + 2.0 * std::numbers::sqrt2 * std::sin(2.0 * theta)) / 8.0;
}

// Two-observable correlator sums.
inline double ghz_maccone(double a, double b) { return 1.0 + 2.0 * std::abs(a * b); }
inline double w_maccone(double theta) { return 1.0 + w_pcc_plus_tripartite(theta); }

}  // namespace testutil
