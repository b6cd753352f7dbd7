#pragma once

// Parameter sweeps over the state families, monotonicity verdicts on the
// resulting curves, discovery of measure-inequivalent state pairs in the
// x-family, the GHZ/W mixture study with its analytic reference curves, and
// finite-shot estimation of the correlators from sampled measurement
// outcomes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tricorr/complex_matrix.hpp"
#include "tricorr/correlators.hpp"
#include "tricorr/measures.hpp"
#include "tricorr/states.hpp"

namespace tricorr {

struct ScanRecord {
  std::string param_name;
  double param = 0.0;
  std::vector<std::pair<std::string, double>> quantities;  // insertion-ordered

  double get(const std::string& id) const {
    for (const auto& [k, v] : quantities) {
      if (k == id) return v;
    }
    throw std::invalid_argument("ScanRecord: no quantity '" + id + "'");
  }
  bool has(const std::string& id) const {
    return std::any_of(quantities.begin(), quantities.end(),
                       [&](const auto& kv) { return kv.first == id; });
  }
};

// start:stop:step grid, inclusive of both endpoints within half a step.
inline std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("make_grid: step must be positive");
  if (stop < start) throw std::invalid_argument("make_grid: stop < start");
  std::vector<double> g;
  for (int k = 0;; ++k) {
    const double v = start + k * step;
    if (v > stop + 0.5 * step) break;
    g.push_back(std::min(v, stop));
  }
  return g;
}

inline const std::vector<std::string>& known_quantities() {
  static const std::vector<std::string> ids = {
      "F123",   "C_GMC",  "G123",   "tau123",    "C123_X",  "C123_Y",
      "C123_Z", "C123_plus", "C123_P0", "C123_P1", "I123_X", "I123_Y",
      "I123_Z", "P_X",    "P_Y",    "P_Z"};
  return ids;
}

// Numeric value of one quantity for one family member. Everything except
// tau123 (closed form only) is computed from the density matrix.
inline double evaluate_quantity(const std::string& id, const StateFamily& family,
                                const DensityMatrix3Q& rho) {
  if (id == "F123") return concurrence_fill(rho);
  if (id == "C_GMC") return gmc(rho);
  if (id == "G123") return global_measure(rho);
  if (id == "tau123") return tangle_closed(family);
  if (id.rfind("C123_", 0) == 0) {
    std::string label = id.substr(5);
    if (label == "plus") label = "Pplus";
    return pcc_tripartite(rho, named_observable(label)).tripartite;
  }
  if (id.rfind("I123_", 0) == 0) {
    return mi_tripartite(rho, named_basis(id.substr(5))).tripartite;
  }
  if (id.rfind("P_", 0) == 0) {
    return mp_tripartite(rho, named_basis(id.substr(2)));
  }
  throw std::invalid_argument("unknown quantity '" + id + "'");
}

inline void validate_scan_domain(FamilyId id, double v) {
  switch (id) {
    case FamilyId::generalized_ghz:
      if (v < 0.0 || v > 1.0) throw std::invalid_argument("scan: a outside [0,1]");
      return;
    case FamilyId::generalized_w:
      if (v < 0.0 || v > std::numbers::pi / 2 + 1e-12)
        throw std::invalid_argument("scan: theta outside [0, pi/2]");
      return;
    case FamilyId::x_family:
      if (v < -2.0 || v > 2.0) throw std::invalid_argument("scan: a outside [-2,2]");
      return;
    case FamilyId::ghz_y:
      if (v < 0.0 || v > 1.0) throw std::invalid_argument("scan: y outside [0,1]");
      return;
    case FamilyId::ghz_w_mixture:
      throw std::invalid_argument("scan: use mixed_state_study for ghz-w-mixture");
  }
}

inline std::vector<ScanRecord> scan_family(FamilyId family, const std::vector<double>& grid,
                                           const std::vector<std::string>& quantities) {
  std::vector<ScanRecord> out;
  out.reserve(grid.size());
  const std::string pname = family_scan_param(family);
  for (double v : grid) {
    validate_scan_domain(family, v);
    StateFamily f{family, {{pname, v}}};
    const DensityMatrix3Q rho = make_density(f);
    ScanRecord rec{pname, v, {}};
    rec.quantities.reserve(quantities.size());
    for (const auto& id : quantities) {
      rec.quantities.emplace_back(id, evaluate_quantity(id, f, rho));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

struct MonotonicityVerdict {
  std::pair<std::string, std::string> pair;
  double rank_correlation = 0.0;
  bool monotone = false;
  int direction = 0;  // +1 nondecreasing, -1 nonincreasing (along sorted x)

  struct Violation {
    double x1, y1, x2, y2;
  };
  std::vector<Violation> violations;
};

namespace detail {
inline std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double cab = 0.0, ca = 0.0, cb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cab += (a[i] - ma) * (b[i] - mb);
    ca += (a[i] - ma) * (a[i] - ma);
    cb += (b[i] - mb) * (b[i] - mb);
  }
  if (ca <= 0.0 || cb <= 0.0) return 0.0;
  return cab / std::sqrt(ca * cb);
}
}  // namespace detail

// Sorts the records by quantity x and checks whether quantity y moves in one
// direction. Ties within 1e-10 are ignored; two materially different y at an
// x tie break monotonicity as well (the relation is not single-valued).
inline MonotonicityVerdict check_monotonic(const std::vector<ScanRecord>& records,
                                           const std::string& x, const std::string& y) {
  if (records.size() < 3) throw std::invalid_argument("check_monotonic: need at least 3 records");
  constexpr double tie = 1e-10;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(records.size());
  for (const auto& r : records) pts.emplace_back(r.get(x), r.get(y));
  std::sort(pts.begin(), pts.end());
  if (pts.back().first - pts.front().first <= tie) {
    throw std::invalid_argument("check_monotonic: x is constant");
  }

  MonotonicityVerdict v;
  v.pair = {x, y};
  std::vector<double> xs(pts.size()), ys(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    xs[i] = pts[i].first;
    ys[i] = pts[i].second;
  }
  v.rank_correlation = detail::pearson(detail::average_ranks(xs), detail::average_ranks(ys));
  v.direction = v.rank_correlation >= 0.0 ? 1 : -1;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dx = pts[i + 1].first - pts[i].first;
    const double dy = pts[i + 1].second - pts[i].second;
    const bool x_tied = dx <= tie;
    const bool wrong_way = v.direction > 0 ? dy < -tie : dy > tie;
    if ((x_tied && std::abs(dy) > tie) || (!x_tied && wrong_way)) {
      v.violations.push_back({pts[i].first, pts[i].second, pts[i + 1].first, pts[i + 1].second});
    }
  }
  v.monotone = v.violations.empty();
  return v;
}

struct InequivalencePair {
  double a1 = 0.0, a2 = 0.0;
  double gmc1 = 0.0, gmc2 = 0.0;
  double cf1 = 0.0, cf2 = 0.0;
  bool gmc_tie = false;
  bool cf_tie = false;
};

// Ordered pairs (a1 < a2) from the x-family grid on which GMC and CF rank the
// two states oppositely, or one ties (within tie_tol, default two-decimal
// table precision) while the other strictly orders (beyond 1e-6).
inline std::vector<InequivalencePair> find_inequivalence_pairs(const std::vector<double>& grid,
                                                               double tie_tol = 5e-3) {
  constexpr double strict = 1e-6;
  struct Entry {
    double a, g, f;
  };
  std::vector<Entry> entries;
  entries.reserve(grid.size());
  for (double a : grid) {
    const DensityMatrix3Q rho = to_density(make_x_family(a));
    const TriangleEdges e = triangle_edges(rho);
    entries.push_back({a, gmc(e), concurrence_fill(e)});
  }
  std::vector<InequivalencePair> pairs;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const double dg = entries[i].g - entries[j].g;
      const double df = entries[i].f - entries[j].f;
      const bool g_tie = std::abs(dg) <= tie_tol;
      const bool f_tie = std::abs(df) <= tie_tol;
      const bool opposite = !g_tie && !f_tie && dg * df < 0.0;
      const bool one_tied = (g_tie != f_tie) && (g_tie ? std::abs(df) : std::abs(dg)) > strict;
      if (opposite || one_tied) {
        pairs.push_back({entries[i].a, entries[j].a, entries[i].g, entries[j].g, entries[i].f,
                         entries[j].f, g_tie, f_tie});
      }
    }
  }
  return pairs;
}

// --- GHZ/W mixture study -----------------------------------------------------

// Analytic reference curves for p|GHZ><GHZ| + (1-p)|W><W|. The correlator and
// mutual-information expressions follow from the expectation values; the
// concurrence-fill curve quotes the known convex-roof result for this family
// and is not recomputed here.
inline double mixture_pcc_p0_closed(double p) {
  return (p * p + 16.0 * p - 8.0) / ((2.0 + p) * (4.0 - p));
}
inline double mixture_pcc_plus_closed(double p) {
  return (4.0 - p) / std::sqrt((5.0 - 2.0 * p) * (7.0 + 2.0 * p));
}
inline double mixture_mi_z_closed(double p) {
  double v = 0.0;
  if (p < 1.0) {
    v += (2.0 * (1.0 - p) / 3.0) * std::log2(6.0 / (4.0 - p));
    v += ((1.0 - p) / 3.0) * std::log2(12.0 * (1.0 - p) / ((2.0 + p) * (2.0 + p)));
  }
  if (p > 0.0) {
    v += (p / 2.0) *
         (std::log2(6.0 / (2.0 + p)) + std::log2(18.0 * p / (8.0 + 2.0 * p - p * p)));
  }
  return v;
}
inline double mixture_cf_closed(double p) { return (5.0 * p * p - 4.0 * p + 8.0) / 9.0; }

inline std::vector<ScanRecord> mixed_state_study(const std::vector<double>& p_grid) {
  std::vector<ScanRecord> out;
  out.reserve(p_grid.size());
  const ObservableSpec p0 = named_observable("P0");
  const ObservableSpec pplus = named_observable("Pplus");
  const ProductBasis zbasis = named_basis("Z");
  for (double p : p_grid) {
    const DensityMatrix3Q rho = mix_ghz_w(p);
    ScanRecord rec{"p", p, {}};
    rec.quantities.emplace_back("C123_P0_num", pcc_tripartite_signed(rho, p0));
    rec.quantities.emplace_back("C123_plus_num", pcc_tripartite_signed(rho, pplus));
    rec.quantities.emplace_back("I123_Z_num", mi_tripartite(rho, zbasis).tripartite);
    rec.quantities.emplace_back("C123_P0_closed", mixture_pcc_p0_closed(p));
    rec.quantities.emplace_back("C123_plus_closed", mixture_pcc_plus_closed(p));
    rec.quantities.emplace_back("I123_Z_closed", mixture_mi_z_closed(p));
    rec.quantities.emplace_back("F123_closed", mixture_cf_closed(p));
    out.push_back(std::move(rec));
  }
  return out;
}

// --- finite-shot estimation ---------------------------------------------------

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic uniform in [0,1) from a fully specified generator, so sampled
// outputs are platform-stable byte for byte.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : state_(splitmix64(seed)) {}
  double next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t z = splitmix64(state_);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// shots draws from an 8-cell distribution by inverse CDF.
inline std::array<std::uint64_t, 8> multinomial_counts(UniformStream& u,
                                                       const std::array<double, 8>& prob,
                                                       std::uint64_t shots) {
  std::array<double, 8> cdf{};
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    acc += prob[i];
    cdf[i] = acc;
  }
  cdf[7] = std::max(cdf[7], 1.0);
  std::array<std::uint64_t, 8> counts{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double r = u.next();
    int cell = 0;
    while (cell < 7 && r >= cdf[cell]) ++cell;
    ++counts[cell];
  }
  return counts;
}

}  // namespace detail

enum class EstimatorKind { pcc, mi, mp };

struct SampleEstimate {
  EstimatorKind kind = EstimatorKind::pcc;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::array<double, 3> per_cut{0.0, 0.0, 0.0};
  std::array<double, 3> per_cut_se{0.0, 0.0, 0.0};
  std::array<bool, 3> degenerate{false, false, false};
  double tripartite = 0.0;
  double tripartite_se = 0.0;
  bool se_reliable = false;  // false when shots < 2
};

namespace detail {

struct CutModel {
  std::array<double, 8> prob{};   // flattened 2x4 joint distribution
  std::array<double, 2> a_vals{};  // lone-qubit observable eigenvalues
  std::array<double, 4> b_vals{};  // pair observable eigenvalues
};

inline double pcc_from_counts(const CutModel& m, const std::array<std::uint64_t, 8>& counts,
                              std::uint64_t shots, bool* degenerate) {
  double ea = 0.0, eb = 0.0, ea2 = 0.0, eb2 = 0.0, eab = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) {
      const double f = static_cast<double>(counts[i * 4 + j]) / static_cast<double>(shots);
      const double a = m.a_vals[i], b = m.b_vals[j];
      ea += f * a;
      eb += f * b;
      ea2 += f * a * a;
      eb2 += f * b * b;
      eab += f * a * b;
    }
  const double sp = std::sqrt(std::max(ea2 - ea * ea, 0.0)) * std::sqrt(std::max(eb2 - eb * eb, 0.0));
  if (sp <= kPccDegenerateTol) {
    *degenerate = true;
    return 0.0;
  }
  *degenerate = false;
  return std::abs((eab - ea * eb) / sp);
}

inline double mi_from_counts(const std::array<std::uint64_t, 8>& counts, std::uint64_t shots) {
  std::array<std::array<double, 4>, 2> p{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j)
      p[i][j] = static_cast<double>(counts[i * 4 + j]) / static_cast<double>(shots);
  return mutual_information_of(p);
}

}  // namespace detail

// Draws seeded measurement outcomes from the exact per-cut joint distribution
// in the observable's eigenbasis (each cut an independent experiment run of
// `shots` settings), then forms plug-in estimates and bootstrap standard
// errors (multinomial resampling of the observed counts).
inline SampleEstimate sample_correlators(const DensityMatrix3Q& rho, const ObservableSpec& obs,
                                         EstimatorKind kind, std::uint64_t shots,
                                         std::uint64_t seed, int bootstrap_resamples = 200) {
  if (shots < 1) throw std::invalid_argument("sample_correlators: shots must be >= 1");

  // Per-qubit eigenbasis of the single observable; pair values are the pair
  // observable's diagonal in the induced product basis (it must be diagonal
  // there, which holds for every named observable).
  const ProductBasis basis = [&] {
    const ComplexMatrix& s = obs.single;
    const double offd = std::abs(s(0, 1));
    QubitBasis qb;
    if (offd < 1e-14) {
      const bool descending = s(0, 0).real() >= s(1, 1).real();
      qb = descending ? QubitBasis{{{{1.0, 0.0}, {0.0, 1.0}}}}
                      : QubitBasis{{{{0.0, 1.0}, {1.0, 0.0}}}};
    } else {
      // Analytic 2x2 Hermitian eigenvectors, descending eigenvalue order.
      const double alpha = s(0, 0).real(), gamma = s(1, 1).real();
      const cplx beta = s(0, 1);
      const double half = 0.5 * (alpha - gamma);
      const double rad = std::sqrt(half * half + std::norm(beta));
      const double lam_hi = 0.5 * (alpha + gamma) + rad;
      const cplx v0 = beta, v1 = lam_hi - alpha;
      const double n = std::sqrt(std::norm(v0) + std::norm(v1));
      qb.states[0] = {v0 / n, v1 / n};
      qb.states[1] = {-std::conj(v1) / n, std::conj(v0) / n};
    }
    return ProductBasis{obs.label, {qb, qb, qb}};
  }();

  auto eigenvalue_of = [&](const std::array<cplx, 2>& v, const ComplexMatrix& op) {
    cplx acc = 0.0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) acc += std::conj(v[r]) * op(r, c) * v[c];
    return acc.real();
  };

  std::array<detail::CutModel, 3> models;
  for (Bipartition cut : all_bipartitions()) {
    detail::CutModel m;
    const auto joint = cut_joint_distribution(rho, cut, basis);
    double total = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) {
        m.prob[i * 4 + j] = joint[i][j];
        total += joint[i][j];
      }
    for (auto& p : m.prob) p /= total;
    const auto& qb = basis.qubit[0];
    for (int i = 0; i < 2; ++i) m.a_vals[i] = eigenvalue_of(qb.states[i], obs.single);
    for (int j = 0; j < 4; ++j) {
      // Pair eigenvalue on |b_{j>>1} b_{j&1}>.
      std::array<cplx, 4> w{};
      for (int r = 0; r < 4; ++r) {
        w[r] = qb.states[(j >> 1) & 1][(r >> 1) & 1] * qb.states[j & 1][r & 1];
      }
      cplx diag = 0.0;
      double off = 0.0;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          const cplx contrib = std::conj(w[r]) * obs.pair(r, c) * w[c];
          diag += contrib;
        }
      // Cross terms against the other product states must vanish.
      for (int k = 0; k < 4; ++k) {
        if (k == j) continue;
        std::array<cplx, 4> wk{};
        for (int r = 0; r < 4; ++r)
          wk[r] = qb.states[(k >> 1) & 1][(r >> 1) & 1] * qb.states[k & 1][r & 1];
        cplx cross = 0.0;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) cross += std::conj(wk[r]) * obs.pair(r, c) * w[c];
        off = std::max(off, std::abs(cross));
      }
      if (off > 1e-10) {
        throw std::invalid_argument(
            "sample_correlators: pair observable is not diagonal in the product eigenbasis");
      }
      m.b_vals[j] = diag.real();
    }
    models[static_cast<int>(cut)] = m;
  }

  auto estimate_cut = [&](int cut, const std::array<std::uint64_t, 8>& counts, bool* degenerate) {
    *degenerate = false;
    switch (kind) {
      case EstimatorKind::pcc:
        return detail::pcc_from_counts(models[cut], counts, shots, degenerate);
      case EstimatorKind::mi:
        return detail::mi_from_counts(counts, shots);
      case EstimatorKind::mp: {
        // Matched-index probabilities: cells (0, b=00) and (1, b=11).
        const double f0 = static_cast<double>(counts[0]) / static_cast<double>(shots);
        const double f1 = static_cast<double>(counts[7]) / static_cast<double>(shots);
        return f0 + f1;
      }
    }
    throw std::logic_error("estimate_cut: unreachable");
  };

  SampleEstimate est;
  est.kind = kind;
  est.shots = shots;
  est.seed = seed;
  est.se_reliable = shots >= 2;

  std::array<std::array<std::uint64_t, 8>, 3> observed{};
  for (int cut = 0; cut < 3; ++cut) {
    detail::UniformStream stream(seed ^ detail::splitmix64(0x517cc1b727220a95ULL + cut));
    observed[cut] = detail::multinomial_counts(stream, models[cut].prob, shots);
    est.per_cut[cut] = estimate_cut(cut, observed[cut], &est.degenerate[cut]);
  }
  {
    std::vector<double> factors;
    bool any_degenerate = false;
    for (int cut = 0; cut < 3; ++cut) {
      if (est.degenerate[cut]) {
        any_degenerate = true;
      } else {
        factors.push_back(std::max(est.per_cut[cut], 0.0));
      }
    }
    est.tripartite = any_degenerate ? 0.0 : detail::geometric_mean(factors);
    if (kind == EstimatorKind::mp) {
      // One joint setting; the per-cut groupings all see the same value.
      est.tripartite = est.per_cut[0];
    }
  }

  if (est.se_reliable && bootstrap_resamples > 0) {
    std::array<std::array<double, 8>, 3> empirical{};
    for (int cut = 0; cut < 3; ++cut)
      for (int c = 0; c < 8; ++c)
        empirical[cut][c] =
            static_cast<double>(observed[cut][c]) / static_cast<double>(shots);
    std::array<std::vector<double>, 3> cut_samples;
    std::vector<double> tri_samples;
    for (auto& v : cut_samples) v.reserve(bootstrap_resamples);
    tri_samples.reserve(bootstrap_resamples);
    std::array<detail::UniformStream, 3> streams{
        detail::UniformStream(seed ^ detail::splitmix64(0xabcdef0123456789ULL)),
        detail::UniformStream(seed ^ detail::splitmix64(0xabcdef012345678aULL)),
        detail::UniformStream(seed ^ detail::splitmix64(0xabcdef012345678bULL))};
    for (int r = 0; r < bootstrap_resamples; ++r) {
      std::array<double, 3> vals{};
      bool any_degenerate = false;
      std::vector<double> factors;
      for (int cut = 0; cut < 3; ++cut) {
        const auto counts = detail::multinomial_counts(streams[cut], empirical[cut], shots);
        bool deg = false;
        vals[cut] = estimate_cut(cut, counts, &deg);
        cut_samples[cut].push_back(vals[cut]);
        if (deg) {
          any_degenerate = true;
        } else {
          factors.push_back(std::max(vals[cut], 0.0));
        }
      }
      double tri = any_degenerate ? 0.0 : detail::geometric_mean(factors);
      if (kind == EstimatorKind::mp) tri = vals[0];
      tri_samples.push_back(tri);
    }
    auto stddev = [](const std::vector<double>& v) {
      const double n = static_cast<double>(v.size());
      const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
      double s = 0.0;
      for (double x : v) s += (x - m) * (x - m);
      return std::sqrt(s / (n - 1.0));
    };
    for (int cut = 0; cut < 3; ++cut) est.per_cut_se[cut] = stddev(cut_samples[cut]);
    est.tripartite_se = stddev(tri_samples);
  }
  return est;
}

// --- serialization -------------------------------------------------------------

enum class TableFormat { csv, json };

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string table_to_csv(const std::vector<ScanRecord>& records) {
  std::ostringstream os;
  os << "param";
  if (!records.empty()) {
    for (const auto& [k, _] : records.front().quantities) os << "," << k;
  }
  os << "\n";
  for (const auto& r : records) {
    os << format_value(r.param);
    for (const auto& [_, v] : r.quantities) os << "," << format_value(v);
    os << "\n";
  }
  return os.str();
}

inline nlohmann::json table_to_json(const std::vector<ScanRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json q = nlohmann::json::object();
    for (const auto& [k, v] : r.quantities) q[k] = v;
    arr.push_back({{"param_name", r.param_name}, {"param", r.param}, {"quantities", q}});
  }
  return arr;
}

inline std::vector<ScanRecord> records_from_json(const nlohmann::json& arr) {
  std::vector<ScanRecord> out;
  for (const auto& item : arr) {
    ScanRecord r{item.at("param_name").get<std::string>(), item.at("param").get<double>(), {}};
    for (const auto& [k, v] : item.at("quantities").items()) {
      r.quantities.emplace_back(k, v.get<double>());
    }
    std::sort(r.quantities.begin(), r.quantities.end());
    out.push_back(std::move(r));
  }
  return out;
}

inline void emit_table(const std::vector<ScanRecord>& records, TableFormat format,
                       std::ostream& out) {
  if (format == TableFormat::csv) {
    out << table_to_csv(records);
  } else {
    out << table_to_json(records).dump(2) << "\n";
  }
  if (!out) throw std::runtime_error("emit_table: write failed");
}

}  // namespace tricorr
