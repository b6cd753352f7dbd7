#pragma once

// Local amplitude damping: every qubit decays toward |0> through the Kraus
// pair K0 = diag(1, p), K1 = q |0><1| with p = sqrt(exp(-t/tau)) and
// q = sqrt(1 - exp(-t/tau)). Includes the closed-form GMC and Pearson
// trajectories for the sqrt(1-y)|000> + sqrt(y)|111> initial state, the
// finite-time disentanglement (sudden death) solver, and the inversion that
// recovers the GMC trajectory from the measured correlator.

#include <cmath>
#include <optional>

#include "tricorr/complex_matrix.hpp"
#include "tricorr/correlators.hpp"
#include "tricorr/states.hpp"

namespace tricorr {

struct DampingParams {
  double y = 0.0;
  double t_over_tau = 0.0;

  double p() const { return std::sqrt(std::exp(-t_over_tau)); }
  double q() const { return std::sqrt(1.0 - std::exp(-t_over_tau)); }
};

inline DensityMatrix3Q damp_density(const DensityMatrix3Q& rho, double t_over_tau) {
  if (!(t_over_tau >= 0.0)) throw std::invalid_argument("damp_density: time must be nonnegative");
  const double p = std::sqrt(std::exp(-t_over_tau));
  const double q = std::sqrt(std::max(0.0, 1.0 - std::exp(-t_over_tau)));
  const ComplexMatrix k0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, p}});
  const ComplexMatrix k1 = ComplexMatrix::from_rows({{0.0, q}, {0.0, 0.0}});
  const ComplexMatrix* ks[2] = {&k0, &k1};
  ComplexMatrix out(8, 8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const ComplexMatrix kraus = tensor(tensor(*ks[i], *ks[j]), *ks[k]);
        out += kraus * rho.matrix() * kraus.dagger();
      }
  return DensityMatrix3Q(std::move(out));
}

inline DensityMatrix3Q damp_state(const PureState3Q& psi, double t_over_tau) {
  return damp_density(to_density(psi), t_over_tau);
}

// GMC trajectory of the damped sqrt(1-y)|000> + sqrt(y)|111> state:
//   max(0, 2 p^3 (sqrt(y(1-y)) - 3 y q^3)).
// This form vanishes exactly at the sudden-death condition solved by
// esd_time and round-trips through pcc_damped_closed / gmc_from_pcc.
inline double gmc_damped_closed(double y, double t_over_tau) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("gmc_damped_closed: y must lie in [0,1]");
  if (!(t_over_tau >= 0.0)) throw std::invalid_argument("gmc_damped_closed: time must be nonnegative");
  const double p3 = std::exp(-1.5 * t_over_tau);
  const double q3 = std::pow(1.0 - std::exp(-t_over_tau), 1.5);
  return std::max(0.0, 2.0 * p3 * (std::sqrt(y * (1.0 - y)) - 3.0 * y * q3));
}

// GME concurrence of a GHZ-diagonal X-shaped state (the only coherence sits
// between |000> and |111>): 2 max(0, |rho_07| - sum over the three
// complementary diagonal pairs of sqrt(rho_jj rho_kk)). Convex-roof-free
// route used to cross-check the closed trajectory against the channel.
inline double x_state_gme_concurrence(const DensityMatrix3Q& rho) {
  const double w = std::sqrt(std::max(0.0, (rho(1, 1) * rho(6, 6)).real())) +
                   std::sqrt(std::max(0.0, (rho(2, 2) * rho(5, 5)).real())) +
                   std::sqrt(std::max(0.0, (rho(3, 3) * rho(4, 4)).real()));
  return 2.0 * std::max(0.0, std::abs(rho(0, 7)) - w);
}

// Time t/tau at which the damped GMC hits zero: the root of
//   sqrt(1/y - 1) = 3 (1 - exp(-t))^{3/2},
// found by bisection to |residual| <= 1e-12. No finite root exists when
// sqrt(1/y - 1) >= 3 (y <= 0.1): the GMC then reaches zero only
// asymptotically and nullopt is returned.
inline std::optional<double> esd_time(double y) {
  if (!(y > 0.0 && y < 1.0)) throw std::invalid_argument("esd_time: y must lie in (0,1)");
  const double lhs = std::sqrt(1.0 / y - 1.0);
  if (lhs >= 3.0) return std::nullopt;
  auto f = [&](double t) { return 3.0 * std::pow(1.0 - std::exp(-t), 1.5) - lhs; };
  double lo = 0.0, hi = 50.0;
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= 1e-12) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

// Closed-form Pearson correlator (|+><+| observables) of the damped state:
//   (2 exp(-3t/2tau) / sqrt(3)) sqrt(y (1-y)).
inline double pcc_damped_closed(double y, double t_over_tau) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("pcc_damped_closed: y must lie in [0,1]");
  if (!(t_over_tau >= 0.0)) throw std::invalid_argument("pcc_damped_closed: time must be nonnegative");
  return 2.0 * std::exp(-1.5 * t_over_tau) / std::sqrt(3.0) * std::sqrt(y * (1.0 - y));
}

// Inverts pcc_damped_closed and evaluates the GMC trajectory at the implied
// time, floored at zero. c_plus must lie in [0, 2 sqrt(y(1-y))/sqrt(3)].
inline double gmc_from_pcc(double c_plus, double y) {
  if (!(y > 0.0 && y < 1.0)) throw std::invalid_argument("gmc_from_pcc: y must lie in (0,1)");
  const double scale = std::sqrt(y * (1.0 - y));
  const double r = std::sqrt(3.0) * c_plus / (2.0 * scale);  // = p^3
  if (c_plus < -1e-12 || r > 1.0 + 1e-9) {
    throw std::invalid_argument("gmc_from_pcc: c_plus outside the admissible range");
  }
  const double p3 = std::clamp(r, 0.0, 1.0);
  const double q3 = std::pow(1.0 - std::pow(p3, 2.0 / 3.0), 1.5);
  return std::max(0.0, 2.0 * p3 * (scale - 3.0 * y * q3));
}

}  // namespace tricorr
