#pragma once

// Tripartite entanglement measures built on the concurrence triangle: the
// squared edges D^2_{i(jk)} = 2(1 - purity of qubit i's reduction), the
// Concurrence Fill (quartic root of the scaled Heron area), the genuine
// multipartite concurrence (least squared edge), plus the non-genuine
// global and tangle measures and the analytic closed forms for the GHZ/W
// families that serve as oracles for the numeric path.

#include <algorithm>
#include <cmath>
#include <optional>

#include "tricorr/complex_matrix.hpp"
#include "tricorr/states.hpp"

namespace tricorr {

struct TriangleEdges {
  double d1_23 = 0.0;  // D^2 for the cut 1-(23)
  double d2_13 = 0.0;
  double d3_12 = 0.0;

  double min_edge() const { return std::min({d1_23, d2_13, d3_12}); }
  std::array<double, 3> as_array() const { return {d1_23, d2_13, d3_12}; }
};

inline TriangleEdges triangle_edges(const DensityMatrix3Q& rho) {
  TriangleEdges e;
  e.d1_23 = 2.0 * (1.0 - purity(partial_trace(rho, {2, 3})));
  e.d2_13 = 2.0 * (1.0 - purity(partial_trace(rho, {1, 3})));
  e.d3_12 = 2.0 * (1.0 - purity(partial_trace(rho, {1, 2})));
  return e;
}

// Concurrence Fill from squared edges. The radicand can round to a tiny
// negative number at degenerate triangles; values above -1e-12 clamp to 0,
// anything lower signals corrupted input.
inline double concurrence_fill(const TriangleEdges& e) {
  const double q = 0.5 * (e.d1_23 + e.d2_13 + e.d3_12);
  double r = (16.0 / 3.0) * q * (q - e.d1_23) * (q - e.d2_13) * (q - e.d3_12);
  if (r < -1e-12) {
    throw std::runtime_error("concurrence_fill: negative radicand beyond roundoff");
  }
  r = std::max(r, 0.0);
  return std::pow(r, 0.25);
}

inline double concurrence_fill(const DensityMatrix3Q& rho) {
  return concurrence_fill(triangle_edges(rho));
}

inline double gmc(const TriangleEdges& e) { return e.min_edge(); }
inline double gmc(const DensityMatrix3Q& rho) { return triangle_edges(rho).min_edge(); }

// Global measure 2[1 - (P1^2 + P2^2 + P3^2)/3] with P_i^2 the purity of
// qubit i's reduction. Not a genuine measure: nonzero on some biseparable
// states.
inline double global_measure(const DensityMatrix3Q& rho) {
  const double p1 = purity(partial_trace(rho, {2, 3}));
  const double p2 = purity(partial_trace(rho, {1, 3}));
  const double p3 = purity(partial_trace(rho, {1, 2}));
  return 2.0 * (1.0 - (p1 + p2 + p3) / 3.0);
}

struct MeasureReport {
  TriangleEdges edges;
  double concurrence_fill = 0.0;
  double gmc = 0.0;
  std::optional<double> global_measure;
  std::optional<double> tangle;
  // Edges equal squared concurrences only for pure states; for mixed input
  // they are linear-entropy quantities and CF/GMC lose their meaning.
  bool pure = false;
};

inline MeasureReport measure_state(const DensityMatrix3Q& rho) {
  MeasureReport r;
  r.edges = triangle_edges(rho);
  r.concurrence_fill = concurrence_fill(r.edges);
  r.gmc = gmc(r.edges);
  r.global_measure = global_measure(rho);
  r.pure = std::abs(purity(rho.matrix()) - 1.0) <= 1e-10;
  return r;
}

// Closed-form tangle; known for the two named families only.
inline double tangle_closed(const StateFamily& f) {
  switch (f.id) {
    case FamilyId::generalized_ghz: {
      const double a = f.param("a");
      const double b = f.params.count("b") ? f.param("b") : std::sqrt(std::max(0.0, 1.0 - a * a));
      const double n2 = a * a + b * b;  // constructors renormalize; mirror that here
      return 4.0 * a * a * b * b / (n2 * n2);
    }
    case FamilyId::generalized_w:
      return 0.0;
    default:
      throw std::invalid_argument("tangle_closed: closed form known only for generalized-ghz/w");
  }
}

// Analytic edges, CF, GMC, global measure and tangle for the GHZ/W families.
inline MeasureReport closed_form_measures(const StateFamily& f) {
  MeasureReport r;
  r.pure = true;
  switch (f.id) {
    case FamilyId::generalized_ghz: {
      const double a = f.param("a");
      const double b = f.params.count("b") ? f.param("b") : std::sqrt(std::max(0.0, 1.0 - a * a));
      const double e = 4.0 * a * a * b * b;
      r.edges = {e, e, e};
      r.concurrence_fill = e;
      r.gmc = e;
      r.global_measure = e;
      r.tangle = e;
      return r;
    }
    case FamilyId::generalized_w: {
      const double th = f.param("theta");
      const double s2 = std::sin(th) * std::sin(th);
      const double c2 = std::cos(th) * std::cos(th);
      const double s2t = std::sin(2.0 * th);
      r.edges.d1_23 = s2t * s2t;
      r.edges.d2_13 = s2 * (1.0 + c2);
      r.edges.d3_12 = s2 * (1.0 + c2);
      // F = sin(2t) [ 4/3 (1 - cos^2 t (1+sin^2 t)) (1 + cos^2 t (3 sin^2 t - 1)) ]^{1/4}
      const double inner =
          (4.0 / 3.0) * (1.0 - c2 * (1.0 + s2)) * (1.0 + c2 * (3.0 * s2 - 1.0));
      r.concurrence_fill = s2t * std::pow(std::max(inner, 0.0), 0.25);
      r.gmc = std::sin(th) <= std::sqrt(2.0 / 3.0) ? s2 * (1.0 + c2) : s2t * s2t;
      r.global_measure = (2.0 / 3.0) * s2 * (1.0 + 3.0 * c2);
      r.tangle = 0.0;
      return r;
    }
    default:
      throw std::invalid_argument("closed_form_measures: closed forms known only for generalized-ghz/w");
  }
}

}  // namespace tricorr
