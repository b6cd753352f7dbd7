#pragma once

// Constructors for the built-in three-qubit state families:
//   generalized-ghz   a|000> + b|111>
//   generalized-w     cos(t)|100> + sin(t)/sqrt(2) (|010> + |001>)
//   x-family          one-parameter family interpolating |000>/|111>/|100>
//   ghz-y             sqrt(1-y)|000> + sqrt(y)|111>
//   ghz-w-mixture     p |GHZ><GHZ| + (1-p) |W><W|  (mixed)

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "tricorr/complex_matrix.hpp"

namespace tricorr {

class PureState3Q {
 public:
  // Accepts amplitudes whose norm is within `norm_tol` of 1 and renormalizes
  // exactly, so stored states always satisfy ||psi|| = 1 to machine precision.
  static PureState3Q from_amplitudes(const std::array<cplx, 8>& amps,
                                     double norm_tol = 1e-6) {
    double n2 = 0.0;
    for (const auto& a : amps) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("PureState3Q: non-finite amplitude");
      }
      n2 += std::norm(a);
    }
    if (std::abs(n2 - 1.0) > norm_tol) {
      throw std::invalid_argument("PureState3Q: amplitudes not normalized (|norm^2 - 1| = " +
                                  std::to_string(std::abs(n2 - 1.0)) + ")");
    }
    PureState3Q s;
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < 8; ++i) s.amp_[i] = amps[i] * inv;
    return s;
  }

  const std::array<cplx, 8>& amplitudes() const { return amp_; }
  const cplx& amplitude(std::size_t basis_index) const { return amp_[basis_index]; }

  double norm_squared() const {
    double n2 = 0.0;
    for (const auto& a : amp_) n2 += std::norm(a);
    return n2;
  }

 private:
  PureState3Q() : amp_{} {}
  std::array<cplx, 8> amp_;
};

inline DensityMatrix3Q to_density(const PureState3Q& psi) {
  ComplexMatrix m(8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      m(r, c) = psi.amplitude(r) * std::conj(psi.amplitude(c));
  return DensityMatrix3Q(std::move(m));
}

inline PureState3Q make_ghz(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
    throw std::invalid_argument("make_ghz: a and b must lie in [0,1]");
  }
  if (std::abs(a * a + b * b - 1.0) > 1e-10) {
    throw std::invalid_argument("make_ghz: a^2 + b^2 must equal 1");
  }
  std::array<cplx, 8> amps{};
  amps[0] = a;
  amps[7] = b;
  return PureState3Q::from_amplitudes(amps);
}

inline PureState3Q make_w(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12)) {
    throw std::invalid_argument("make_w: theta must lie in [0, pi/2]");
  }
  std::array<cplx, 8> amps{};
  amps[4] = std::cos(theta);                      // |100>
  amps[2] = std::sin(theta) / std::numbers::sqrt2;  // |010>
  amps[1] = std::sin(theta) / std::numbers::sqrt2;  // |001>
  return PureState3Q::from_amplitudes(amps);
}

// Unnormalized component amplitudes of the x-family and its normalization.
struct XFamilyComponents {
  double c000;
  double c111;
  double c100;
  double norm_squared;
};

inline XFamilyComponents x_family_components(double a) {
  const double k = 1.0 - std::numbers::sqrt2 * a;
  XFamilyComponents c{};
  c.c000 = a / std::numbers::sqrt2 + std::cos(std::numbers::pi / 8) * k;
  c.c111 = a + std::sin(std::numbers::pi / 8) * k;
  c.c100 = a / std::numbers::sqrt2;
  c.norm_squared = c.c000 * c.c000 + c.c111 * c.c111 + c.c100 * c.c100;
  return c;
}

inline PureState3Q make_x_family(double a) {
  const XFamilyComponents c = x_family_components(a);
  if (c.norm_squared <= 1e-14) {
    throw std::invalid_argument("make_x_family: degenerate parameter (vanishing norm)");
  }
  const double inv = 1.0 / std::sqrt(c.norm_squared);
  std::array<cplx, 8> amps{};
  amps[0] = c.c000 * inv;
  amps[7] = c.c111 * inv;
  amps[4] = c.c100 * inv;
  return PureState3Q::from_amplitudes(amps);
}

inline PureState3Q make_ghz_y(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("make_ghz_y: y must lie in [0,1]");
  return make_ghz(std::sqrt(1.0 - y), std::sqrt(y));
}

inline constexpr double w_state_theta() { return 0.9553166181245093; }  // arctan(sqrt(2))

// p |GHZ><GHZ| + (1-p) |W><W| with GHZ at a=b=1/sqrt(2) and W at arctan(sqrt 2).
inline DensityMatrix3Q mix_ghz_w(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mix_ghz_w: p must lie in [0,1]");
  const DensityMatrix3Q g = to_density(make_ghz(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2));
  const DensityMatrix3Q w = to_density(make_w(w_state_theta()));
  ComplexMatrix m(8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) m(r, c) = p * g(r, c) + (1.0 - p) * w(r, c);
  return DensityMatrix3Q(std::move(m));
}

enum class FamilyId { generalized_ghz, generalized_w, x_family, ghz_y, ghz_w_mixture };

struct StateFamily {
  FamilyId id;
  std::map<std::string, double> params;

  double param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) {
      throw std::invalid_argument("StateFamily: missing parameter '" + name + "'");
    }
    return it->second;
  }
};

inline std::string family_name(FamilyId id) {
  switch (id) {
    case FamilyId::generalized_ghz: return "generalized-ghz";
    case FamilyId::generalized_w: return "generalized-w";
    case FamilyId::x_family: return "x-family";
    case FamilyId::ghz_y: return "ghz-y";
    case FamilyId::ghz_w_mixture: return "ghz-w-mixture";
  }
  throw std::logic_error("family_name: unreachable");
}

inline FamilyId parse_family(const std::string& name) {
  if (name == "generalized-ghz") return FamilyId::generalized_ghz;
  if (name == "generalized-w") return FamilyId::generalized_w;
  if (name == "x-family") return FamilyId::x_family;
  if (name == "ghz-y") return FamilyId::ghz_y;
  if (name == "ghz-w-mixture") return FamilyId::ghz_w_mixture;
  throw std::invalid_argument("unknown family '" + name + "'");
}

// The single swept parameter of each family, as used by scans and the CLI.
inline std::string family_scan_param(FamilyId id) {
  switch (id) {
    case FamilyId::generalized_ghz: return "a";
    case FamilyId::generalized_w: return "theta";
    case FamilyId::x_family: return "a";
    case FamilyId::ghz_y: return "y";
    case FamilyId::ghz_w_mixture: return "p";
  }
  throw std::logic_error("family_scan_param: unreachable");
}

inline PureState3Q make_pure(const StateFamily& f) {
  switch (f.id) {
    case FamilyId::generalized_ghz: {
      // b defaults to sqrt(1-a^2) when omitted.
      const double a = f.param("a");
      double b;
      if (auto it = f.params.find("b"); it != f.params.end()) {
        b = it->second;
      } else {
        if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("generalized-ghz: a must lie in [0,1]");
        b = std::sqrt(std::max(0.0, 1.0 - a * a));
      }
      // Accept parameters given at limited precision; renormalize exactly.
      const double n = std::hypot(a, b);
      if (std::abs(n - 1.0) > 1e-6) {
        throw std::invalid_argument("generalized-ghz: a^2 + b^2 must equal 1");
      }
      return make_ghz(a / n, b / n);
    }
    case FamilyId::generalized_w: return make_w(f.param("theta"));
    case FamilyId::x_family: return make_x_family(f.param("a"));
    case FamilyId::ghz_y: return make_ghz_y(f.param("y"));
    case FamilyId::ghz_w_mixture:
      throw std::invalid_argument("ghz-w-mixture is a mixed state; use make_density");
  }
  throw std::logic_error("make_pure: unreachable");
}

inline DensityMatrix3Q make_density(const StateFamily& f) {
  if (f.id == FamilyId::ghz_w_mixture) return mix_ghz_w(f.param("p"));
  return to_density(make_pure(f));
}

}  // namespace tricorr
