#pragma once

// Bipartite and tripartite statistical correlators: Pearson correlation of a
// single-qubit observable against a two-qubit observable on the complementary
// pair, mutual information of the 2x4 joint outcome distribution in a product
// basis, mutual predictability, and the two-observable correlator sum.
//
// Tripartite values are geometric means over the three one-vs-two cuts
// 1-(23), 2-(13), 3-(12). A cut whose observable variance vanishes is
// "degenerate": a tagged value rather than an error.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "tricorr/complex_matrix.hpp"

namespace tricorr {

enum class Bipartition { q1_vs_23 = 0, q2_vs_13 = 1, q3_vs_12 = 2 };

inline constexpr std::array<Bipartition, 3> all_bipartitions() {
  return {Bipartition::q1_vs_23, Bipartition::q2_vs_13, Bipartition::q3_vs_12};
}

// Lone qubit and ascending pair of the complementary qubits for a cut.
inline int lone_qubit(Bipartition cut) { return static_cast<int>(cut) + 1; }
inline std::array<int, 2> pair_qubits(Bipartition cut) {
  switch (cut) {
    case Bipartition::q1_vs_23: return {2, 3};
    case Bipartition::q2_vs_13: return {1, 3};
    case Bipartition::q3_vs_12: return {1, 2};
  }
  throw std::logic_error("pair_qubits: unreachable");
}

inline std::string cut_name(Bipartition cut) {
  switch (cut) {
    case Bipartition::q1_vs_23: return "1-(23)";
    case Bipartition::q2_vs_13: return "2-(13)";
    case Bipartition::q3_vs_12: return "3-(12)";
  }
  throw std::logic_error("cut_name: unreachable");
}

struct ObservableSpec {
  std::string label;
  ComplexMatrix single;  // 2x2 Hermitian, acts on the lone qubit
  ComplexMatrix pair;    // 4x4 Hermitian, acts on the complementary pair
};

namespace pauli {
inline ComplexMatrix x() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
inline ComplexMatrix y() {
  return ComplexMatrix::from_rows({{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}});
}
inline ComplexMatrix z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
inline ComplexMatrix p0() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}); }
inline ComplexMatrix p1() { return ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}}); }
inline ComplexMatrix pplus() { return ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}); }
}  // namespace pauli

inline ObservableSpec make_observable(std::string label, ComplexMatrix single) {
  if (single.rows() != 2 || single.cols() != 2 || !single.is_hermitian(tol::hermiticity)) {
    throw std::invalid_argument("make_observable: single must be 2x2 Hermitian");
  }
  ComplexMatrix pair = tensor(single, single);
  return ObservableSpec{std::move(label), std::move(single), std::move(pair)};
}

// Labels are the CLI-stable strings X, Y, Z, P0, P1, Pplus; the pair
// observable is the self-tensor of the single one.
inline ObservableSpec named_observable(const std::string& label) {
  if (label == "X") return make_observable("X", pauli::x());
  if (label == "Y") return make_observable("Y", pauli::y());
  if (label == "Z") return make_observable("Z", pauli::z());
  if (label == "P0") return make_observable("P0", pauli::p0());
  if (label == "P1") return make_observable("P1", pauli::p1());
  if (label == "Pplus") return make_observable("Pplus", pauli::pplus());
  throw std::invalid_argument("named_observable: unknown label '" + label + "'");
}

// Ordered orthonormal single-qubit basis, stored as two 2-vectors.
struct QubitBasis {
  std::array<std::array<cplx, 2>, 2> states;

  double orthonormality_deviation() const {
    auto ip = [&](int i, int j) {
      return std::conj(states[i][0]) * states[j][0] + std::conj(states[i][1]) * states[j][1];
    };
    double d = std::abs(ip(0, 0) - cplx{1.0, 0.0});
    d = std::max(d, std::abs(ip(1, 1) - cplx{1.0, 0.0}));
    d = std::max(d, std::abs(ip(0, 1)));
    return d;
  }
};

struct ProductBasis {
  std::string label;
  std::array<QubitBasis, 3> qubit;
};

namespace detail {
inline QubitBasis check_basis(QubitBasis b) {
  if (b.orthonormality_deviation() > tol::hermiticity) {
    throw std::invalid_argument("ProductBasis: basis not orthonormal");
  }
  return b;
}
}  // namespace detail

inline ProductBasis uniform_basis(const std::string& label, const QubitBasis& b) {
  const QubitBasis checked = detail::check_basis(b);
  return ProductBasis{label, {checked, checked, checked}};
}

// Eigenbasis of the named single-qubit observable on each qubit, ordered by
// descending eigenvalue.
inline ProductBasis named_basis(const std::string& label) {
  const double s = 1.0 / std::numbers::sqrt2;
  if (label == "X" || label == "Pplus") {
    return uniform_basis(label, QubitBasis{{{{s, s}, {s, -s}}}});
  }
  if (label == "Y") {
    return uniform_basis(label, QubitBasis{{{{s, cplx{0.0, 1.0} * s}, {s, cplx{0.0, -1.0} * s}}}});
  }
  if (label == "Z" || label == "P0") {
    return uniform_basis(label, QubitBasis{{{{1.0, 0.0}, {0.0, 1.0}}}});
  }
  if (label == "P1") {
    return uniform_basis(label, QubitBasis{{{{0.0, 1.0}, {1.0, 0.0}}}});
  }
  throw std::invalid_argument("named_basis: unknown label '" + label + "'");
}

// --- full-system operator embeddings -------------------------------------

inline ComplexMatrix embed_single(const ComplexMatrix& op, int qubit) {
  if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("embed_single: not 2x2");
  switch (qubit) {
    case 1: return tensor(op, ComplexMatrix::identity(4));
    case 2: return tensor(tensor(ComplexMatrix::identity(2), op), ComplexMatrix::identity(2));
    case 3: return tensor(ComplexMatrix::identity(4), op);
    default: throw std::invalid_argument("embed_single: qubit out of range");
  }
}

// op4 is indexed by (bit of qa, bit of qb) with qa < qb; identity elsewhere.
inline ComplexMatrix embed_pair(const ComplexMatrix& op4, int qa, int qb) {
  if (op4.rows() != 4 || op4.cols() != 4) throw std::invalid_argument("embed_pair: not 4x4");
  if (!(qa >= 1 && qb <= 3 && qa < qb)) throw std::invalid_argument("embed_pair: bad qubit pair");
  int other = 6 - qa - qb;
  ComplexMatrix out(8, 8);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      if (detail::qubit_bit(r, other) != detail::qubit_bit(c, other)) continue;
      const std::size_t ri = 2 * detail::qubit_bit(r, qa) + detail::qubit_bit(r, qb);
      const std::size_t ci = 2 * detail::qubit_bit(c, qa) + detail::qubit_bit(c, qb);
      out(r, c) = op4(ri, ci);
    }
  }
  return out;
}

inline double expectation(const DensityMatrix3Q& rho, const ComplexMatrix& op) {
  cplx t = 0.0;
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) t += op(r, c) * rho(c, r);
  return t.real();
}

// --- Pearson correlation ---------------------------------------------------

// Variance product at or below this threshold marks a degenerate cut; cut
// values at or below it are treated as exact zeros by the aggregations.
inline constexpr double kPccDegenerateTol = 1e-12;

struct PccValue {
  double abs_value = 0.0;     // |cov| / (sigma_A sigma_B)
  double signed_value = 0.0;  // cov / (sigma_A sigma_B)
  double covariance = 0.0;
  double sigma_product = 0.0;
  bool degenerate = false;    // sigma_A * sigma_B <= kPccDegenerateTol
};

inline PccValue pcc_bipartite(const DensityMatrix3Q& rho, Bipartition cut,
                              const ObservableSpec& obs) {
  if (!obs.single.is_hermitian(tol::hermiticity) || !obs.pair.is_hermitian(tol::hermiticity)) {
    throw std::invalid_argument("pcc_bipartite: observables must be Hermitian");
  }
  const auto pq = pair_qubits(cut);
  const ComplexMatrix a = embed_single(obs.single, lone_qubit(cut));
  const ComplexMatrix b = embed_pair(obs.pair, pq[0], pq[1]);
  const double ea = expectation(rho, a);
  const double eb = expectation(rho, b);
  const double ea2 = expectation(rho, a * a);
  const double eb2 = expectation(rho, b * b);
  const double eab = expectation(rho, a * b);  // supports commute
  PccValue v;
  v.covariance = eab - ea * eb;
  const double var_a = std::max(ea2 - ea * ea, 0.0);
  const double var_b = std::max(eb2 - eb * eb, 0.0);
  v.sigma_product = std::sqrt(var_a) * std::sqrt(var_b);
  if (v.sigma_product <= kPccDegenerateTol) {
    v.degenerate = true;
    return v;
  }
  v.signed_value = v.covariance / v.sigma_product;
  v.abs_value = std::abs(v.signed_value);
  return v;
}

struct CorrelatorReport {
  std::array<double, 3> per_cut{0.0, 0.0, 0.0};
  double tripartite = 0.0;
  std::vector<Bipartition> degenerate_cuts;
};

namespace detail {
// exp of the mean log when every factor is meaningfully positive; any factor
// at numerical zero forces the mean to zero (the zero law).
inline double geometric_mean(const std::vector<double>& factors) {
  double log_sum = 0.0;
  for (double f : factors) {
    if (f <= kPccDegenerateTol) return 0.0;
    log_sum += std::log(f);
  }
  return std::exp(log_sum / static_cast<double>(factors.size()));
}
}  // namespace detail

inline CorrelatorReport pcc_tripartite(const DensityMatrix3Q& rho, const ObservableSpec& obs) {
  CorrelatorReport rep;
  std::vector<double> factors;
  for (Bipartition cut : all_bipartitions()) {
    const PccValue v = pcc_bipartite(rho, cut, obs);
    if (v.degenerate) {
      rep.degenerate_cuts.push_back(cut);
      rep.per_cut[static_cast<int>(cut)] = 0.0;
    } else {
      rep.per_cut[static_cast<int>(cut)] = v.abs_value;
      factors.push_back(v.abs_value);
    }
  }
  rep.tripartite =
      rep.degenerate_cuts.empty() ? detail::geometric_mean(factors) : 0.0;
  return rep;
}

// Sign-carrying cube root of the product of the per-cut signed correlations.
// Used for mixed-state studies whose closed forms keep the sign of the
// (anti)correlation. Degenerate cuts force the result to zero.
inline double pcc_tripartite_signed(const DensityMatrix3Q& rho, const ObservableSpec& obs) {
  double product = 1.0;
  for (Bipartition cut : all_bipartitions()) {
    const PccValue v = pcc_bipartite(rho, cut, obs);
    if (v.degenerate || v.abs_value <= kPccDegenerateTol) return 0.0;
    product *= v.signed_value;
  }
  return std::cbrt(product);
}

// --- mutual information and predictability ---------------------------------

namespace detail {
// |a_i b_j> for a cut: lone-qubit basis state i, pair product state j with
// j = 2*(bit of the lower pair qubit) + (bit of the higher one).
inline std::array<cplx, 8> cut_basis_vector(const ProductBasis& basis, Bipartition cut, int i,
                                            int j) {
  const int lone = lone_qubit(cut);
  const auto pq = pair_qubits(cut);
  std::array<int, 3> sel{};
  sel[lone - 1] = i;
  sel[pq[0] - 1] = (j >> 1) & 1;
  sel[pq[1] - 1] = j & 1;
  std::array<cplx, 8> v{};
  for (std::size_t idx = 0; idx < 8; ++idx) {
    cplx amp = 1.0;
    for (int q = 1; q <= 3; ++q) {
      amp *= basis.qubit[q - 1].states[sel[q - 1]][detail::qubit_bit(idx, q)];
    }
    v[idx] = amp;
  }
  return v;
}

inline double projection_probability(const DensityMatrix3Q& rho, const std::array<cplx, 8>& v) {
  cplx p = 0.0;
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) p += std::conj(v[r]) * rho(r, c) * v[c];
  return p.real();
}
}  // namespace detail

// Joint 2x4 outcome probabilities of a cut in the given product basis.
inline std::array<std::array<double, 4>, 2> cut_joint_distribution(const DensityMatrix3Q& rho,
                                                                   Bipartition cut,
                                                                   const ProductBasis& basis) {
  for (const auto& qb : basis.qubit) {
    if (qb.orthonormality_deviation() > tol::hermiticity) {
      throw std::invalid_argument("cut_joint_distribution: basis not orthonormal");
    }
  }
  std::array<std::array<double, 4>, 2> p{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = detail::projection_probability(rho, detail::cut_basis_vector(basis, cut, i, j));
      if (v < -1e-10 || v > 1.0 + 1e-10) {
        throw std::runtime_error("cut_joint_distribution: probability out of range");
      }
      p[i][j] = std::clamp(v, 0.0, 1.0);
    }
  }
  return p;
}

// Shannon mutual information (base 2) of the 2x4 distribution, 0 log 0 := 0.
inline double mutual_information_of(const std::array<std::array<double, 4>, 2>& p) {
  std::array<double, 2> pa{};
  std::array<double, 4> pb{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) {
      pa[i] += p[i][j];
      pb[j] += p[i][j];
    }
  double mi = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) {
      if (p[i][j] > 0.0) mi += p[i][j] * std::log2(p[i][j] / (pa[i] * pb[j]));
    }
  return mi;
}

inline double mi_bipartite(const DensityMatrix3Q& rho, Bipartition cut, const ProductBasis& basis) {
  return mutual_information_of(cut_joint_distribution(rho, cut, basis));
}

inline CorrelatorReport mi_tripartite(const DensityMatrix3Q& rho, const ProductBasis& basis) {
  CorrelatorReport rep;
  std::vector<double> factors;
  for (Bipartition cut : all_bipartitions()) {
    const double mi = mi_bipartite(rho, cut, basis);
    rep.per_cut[static_cast<int>(cut)] = mi;
    factors.push_back(std::max(mi, 0.0));
  }
  rep.tripartite = detail::geometric_mean(factors);
  return rep;
}

// Sum of the matched-index joint probabilities <a_i b_i c_i| rho |a_i b_i c_i>.
inline double mp_tripartite(const DensityMatrix3Q& rho, const ProductBasis& basis) {
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    std::array<cplx, 8> v{};
    for (std::size_t idx = 0; idx < 8; ++idx) {
      cplx amp = 1.0;
      for (int q = 1; q <= 3; ++q) amp *= basis.qubit[q - 1].states[i][detail::qubit_bit(idx, q)];
      v[idx] = amp;
    }
    total += detail::projection_probability(rho, v);
  }
  return total;
}

// Sum over two observable choices of the tripartite geometric-mean PCC.
// Degenerate cuts arise only where an observable has a definite outcome
// (family endpoints); they carry no correlation information and are excluded
// from that term's geometric mean. A term with no informative cut is the
// endpoint limit of a factor that is identically one along the families this
// sum is used on, so it contributes 1.
inline double maccone_sum(const DensityMatrix3Q& rho, const ObservableSpec& obs1,
                          const ObservableSpec& obs2) {
  double total = 0.0;
  for (const ObservableSpec* obs : {&obs1, &obs2}) {
    std::vector<double> factors;
    for (Bipartition cut : all_bipartitions()) {
      const PccValue v = pcc_bipartite(rho, cut, *obs);
      if (!v.degenerate) factors.push_back(v.abs_value);
    }
    total += factors.empty() ? 1.0 : detail::geometric_mean(factors);
  }
  return total;
}

}  // namespace tricorr
