#include "tricorr/analysis.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"
#include "tricorr/dynamics.hpp"

using namespace tricorr;

TEST(MakeGrid, InclusiveWithinHalfStep) {
  const auto g = make_grid(0.0, 1.0, 0.25);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  // 0:0.95:0.05 keeps its endpoint despite accumulated rounding.
  const auto g2 = make_grid(0.0, 0.95, 0.05);
  ASSERT_EQ(g2.size(), 20u);
  EXPECT_NEAR(g2.back(), 0.95, 1e-12);
  EXPECT_THROW(make_grid(0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(make_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST(ScanFamily, GhzRecordsKnownPoint) {
  const auto records = scan_family(FamilyId::generalized_ghz,
                                   {0.0, 1.0 / std::numbers::sqrt2, 1.0}, {"F123", "C_GMC"});
  ASSERT_EQ(records.size(), 3u);
  EXPECT_NEAR(records[1].get("F123"), 1.0, 1e-9);
  EXPECT_NEAR(records[1].get("C_GMC"), 1.0, 1e-9);
  EXPECT_NEAR(records[0].get("F123"), 0.0, 1e-12);
  EXPECT_EQ(records[0].param_name, "a");
}

TEST(ScanFamily, WSharedMaximaLocation) {
  const auto grid = make_grid(0.0, std::numbers::pi / 2, 0.0025);
  const auto records = scan_family(FamilyId::generalized_w, grid,
                                   {"F123", "C_GMC", "C123_plus", "I123_Z"});
  for (const std::string id : {"F123", "C_GMC", "C123_plus", "I123_Z"}) {
    double best = -1.0, best_theta = 0.0;
    for (const auto& r : records) {
      if (r.get(id) > best) {
        best = r.get(id);
        best_theta = r.param;
      }
    }
    EXPECT_NEAR(best_theta / std::numbers::pi, 0.304, 1e-3) << id;
  }
}

TEST(ScanFamily, XFamilyMeasureMaximaDiffer) {
  const auto grid = make_grid(0.0, 0.95, 0.0025);
  const auto records = scan_family(FamilyId::x_family, grid, {"F123", "C_GMC"});
  double best_f = -1.0, a_f = 0.0, best_g = -1.0, a_g = 0.0;
  for (const auto& r : records) {
    if (r.get("F123") > best_f) {
      best_f = r.get("F123");
      a_f = r.param;
    }
    if (r.get("C_GMC") > best_g) {
      best_g = r.get("C_GMC");
      a_g = r.param;
    }
  }
  EXPECT_NEAR(a_g, 0.3525, 0.01);
  EXPECT_NEAR(a_f, 0.445, 0.01);
  EXPECT_GT(std::abs(a_f - a_g), 0.05);
}

TEST(ScanFamily, RejectsBadInput) {
  EXPECT_THROW(scan_family(FamilyId::generalized_ghz, {1.5}, {"F123"}), std::invalid_argument);
  EXPECT_THROW(scan_family(FamilyId::generalized_w, {0.1}, {"nope"}), std::invalid_argument);
  EXPECT_THROW(scan_family(FamilyId::ghz_w_mixture, {0.1}, {"F123"}), std::invalid_argument);
  EXPECT_THROW(scan_family(FamilyId::x_family, {0.1}, {"tau123"}), std::invalid_argument);
}

TEST(CheckMonotonic, GhzClosedFormRelationsHoldPointwise) {
  const auto grid = make_grid(0.0, 1.0, 1.0 / 199.0);
  const auto records =
      scan_family(FamilyId::generalized_ghz, grid, {"F123", "C_GMC", "C123_X", "I123_X"});
  for (const auto& r : records) {
    const double f = r.get("F123");
    const double g = r.get("C_GMC");
    const double cx = r.get("C123_X");
    EXPECT_NEAR(cx, std::sqrt(f), 1e-9);
    EXPECT_NEAR(cx, std::sqrt(g), 1e-9);
    EXPECT_NEAR(r.get("I123_X"), testutil::ghz_mi_x(r.param, std::sqrt(1 - r.param * r.param)),
                1e-9);
  }
  EXPECT_TRUE(check_monotonic(records, "F123", "C123_X").monotone);
  EXPECT_TRUE(check_monotonic(records, "C_GMC", "I123_X").monotone);
}

TEST(CheckMonotonic, XFamilyMeasuresAreNotMonotone) {
  const auto grid = make_grid(0.0, 0.95, 0.0025);
  const auto records = scan_family(FamilyId::x_family, grid, {"F123", "C_GMC"});
  const MonotonicityVerdict v = check_monotonic(records, "C_GMC", "F123");
  EXPECT_FALSE(v.monotone);
  EXPECT_FALSE(v.violations.empty());
  EXPECT_LT(v.rank_correlation, 1.0);
}

TEST(CheckMonotonic, XFamilyCorrelatorVsMeasureCurvesAreTwoBranched) {
  // Both quantities peak at different parameter values, so each measure value
  // on the overlap is reached twice with different correlator values: the
  // relation is not single-valued and sorting by the measure exposes it.
  const auto grid = make_grid(0.0, 0.95, 0.0025);
  const auto records = scan_family(FamilyId::x_family, grid, {"F123", "C_GMC", "C123_X", "C123_plus"});
  const MonotonicityVerdict cx = check_monotonic(records, "C_GMC", "C123_X");
  EXPECT_FALSE(cx.monotone);
  EXPECT_GT(cx.rank_correlation, 0.9);  // co-varying but not monotone
  const MonotonicityVerdict cp = check_monotonic(records, "F123", "C123_plus");
  EXPECT_FALSE(cp.monotone);
  EXPECT_GT(cp.rank_correlation, 0.9);
}

TEST(CheckMonotonic, ErrorsOnDegenerateInput) {
  std::vector<ScanRecord> two = {{"p", 0.0, {{"x", 0.0}, {"y", 0.0}}},
                                 {"p", 1.0, {{"x", 1.0}, {"y", 1.0}}}};
  EXPECT_THROW(check_monotonic(two, "x", "y"), std::invalid_argument);
  std::vector<ScanRecord> constant = {{"p", 0.0, {{"x", 0.5}, {"y", 0.0}}},
                                      {"p", 0.5, {{"x", 0.5}, {"y", 1.0}}},
                                      {"p", 1.0, {{"x", 0.5}, {"y", 2.0}}}};
  EXPECT_THROW(check_monotonic(constant, "x", "y"), std::invalid_argument);
}

TEST(FindInequivalencePairs, RecoversTabulatedPairs) {
  const auto pairs = find_inequivalence_pairs(make_grid(0.0, 0.95, 0.05));
  auto contains = [&](double a1, double a2) {
    return std::any_of(pairs.begin(), pairs.end(), [&](const InequivalencePair& p) {
      return std::abs(p.a1 - a1) < 1e-9 && std::abs(p.a2 - a2) < 1e-9;
    });
  };
  EXPECT_TRUE(contains(0.0, 0.80));
  EXPECT_TRUE(contains(0.10, 0.70));
  EXPECT_TRUE(contains(0.20, 0.60));
  EXPECT_TRUE(contains(0.25, 0.55));
  EXPECT_TRUE(contains(0.0, 0.95));  // GMC strict, CF ties at table precision

  for (const auto& p : pairs) {
    const bool opposite = !p.gmc_tie && !p.cf_tie && (p.gmc1 - p.gmc2) * (p.cf1 - p.cf2) < 0.0;
    const bool one_tied = p.gmc_tie != p.cf_tie;
    EXPECT_TRUE(opposite || one_tied);
  }
}

TEST(FindInequivalencePairs, TieRowParameterReadings) {
  // The tie row (a1=0, a2) is quoted with two candidate a2 values, 0.71 and
  // 0.871. Only 0.71 reproduces the tabulated tie: GMC 0.50/0.50 at two
  // decimals with CF 0.50 vs 0.75. The other reading lands far away.
  const DensityMatrix3Q r71 = to_density(make_x_family(0.71));
  EXPECT_NEAR(gmc(r71), 0.50, 5e-3);
  EXPECT_NEAR(concurrence_fill(r71), 0.75, 5e-3);
  const DensityMatrix3Q r871 = to_density(make_x_family(0.871));
  EXPECT_NEAR(gmc(r871), 0.297, 5e-3);
  EXPECT_NEAR(concurrence_fill(r871), 0.582, 5e-3);
}

TEST(FindInequivalencePairs, AlignedPairsExcluded) {
  // On a tight low-a grid both measures increase together: no pairs.
  const auto pairs = find_inequivalence_pairs({0.05, 0.10, 0.15});
  EXPECT_TRUE(pairs.empty());
}

TEST(MixedStudy, NumericMatchesAnalyticCurves) {
  const auto records = mixed_state_study(make_grid(0.0, 1.0, 0.02));
  for (const auto& r : records) {
    EXPECT_NEAR(r.get("C123_P0_num"), r.get("C123_P0_closed"), 1e-9) << r.param;
    EXPECT_NEAR(r.get("C123_plus_num"), r.get("C123_plus_closed"), 1e-9) << r.param;
    EXPECT_NEAR(r.get("I123_Z_num"), r.get("I123_Z_closed"), 1e-9) << r.param;
  }
}

TEST(MixedStudy, EndpointValues) {
  const auto records = mixed_state_study({0.0, 1.0});
  EXPECT_NEAR(records[0].get("F123_closed"), 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(records[1].get("F123_closed"), 1.0, 1e-12);
  EXPECT_NEAR(records[0].get("C123_P0_num"), -1.0, 1e-9);
  EXPECT_NEAR(records[1].get("C123_P0_num"), 1.0, 1e-9);
  EXPECT_NEAR(records[1].get("C123_plus_num"), 1.0 / std::sqrt(3.0), 1e-9);
}

TEST(MixedStudy, MutualInformationVsFillIsNotMonotoneAtFineResolution) {
  // The fill curve is symmetric about p = 0.4 while the mutual-information
  // curve bottoms out near p = 0.433, so between those parameters one rises
  // while the other falls and the sorted relation is two-branched.
  const auto records = mixed_state_study(make_grid(0.0, 1.0, 0.0025));
  const MonotonicityVerdict v = check_monotonic(records, "F123_closed", "I123_Z_num");
  EXPECT_FALSE(v.monotone);
  EXPECT_FALSE(v.violations.empty());
  EXPECT_GT(v.rank_correlation, 0.9);
}

TEST(SampleCorrelators, DeterministicForFixedSeed) {
  const DensityMatrix3Q rho = to_density(make_ghz(0.6, 0.8));
  const ObservableSpec x = named_observable("X");
  const SampleEstimate a = sample_correlators(rho, x, EstimatorKind::pcc, 2000, 42);
  const SampleEstimate b = sample_correlators(rho, x, EstimatorKind::pcc, 2000, 42);
  EXPECT_EQ(a.tripartite, b.tripartite);
  EXPECT_EQ(a.per_cut, b.per_cut);
  EXPECT_EQ(a.per_cut_se, b.per_cut_se);
  const SampleEstimate c = sample_correlators(rho, x, EstimatorKind::pcc, 2000, 43);
  EXPECT_NE(a.tripartite, c.tripartite);
}

TEST(SampleCorrelators, PccEstimateConvergesToExactValue) {
  const DensityMatrix3Q rho = to_density(make_ghz(0.6, 0.8));
  const ObservableSpec x = named_observable("X");
  const double exact = 0.96;  // 2ab
  for (const auto& [shots, seed] : {std::pair<std::uint64_t, std::uint64_t>{10000, 7},
                                   {100000, 8}}) {
    const SampleEstimate est = sample_correlators(rho, x, EstimatorKind::pcc, shots, seed);
    EXPECT_LE(std::abs(est.tripartite - exact), 5.0 / std::sqrt(static_cast<double>(shots)))
        << "shots=" << shots;
    EXPECT_TRUE(est.se_reliable);
    EXPECT_GT(est.tripartite_se, 0.0);
  }
}

TEST(SampleCorrelators, MiAndMpEstimates) {
  const DensityMatrix3Q rho = to_density(make_w(w_state_theta()));
  const SampleEstimate mi = sample_correlators(rho, named_observable("Z"), EstimatorKind::mi,
                                               100000, 11);
  EXPECT_NEAR(mi.tripartite, std::log2(3.0) - 2.0 / 3.0, 0.02);
  const SampleEstimate mp = sample_correlators(rho, named_observable("X"), EstimatorKind::mp,
                                               100000, 12);
  EXPECT_NEAR(mp.tripartite, 0.75, 0.02);
}

TEST(SampleCorrelators, SingleShotFlagsUnreliableErrors) {
  const DensityMatrix3Q rho = to_density(make_ghz(0.6, 0.8));
  const SampleEstimate est =
      sample_correlators(rho, named_observable("X"), EstimatorKind::pcc, 1, 5);
  EXPECT_FALSE(est.se_reliable);
  EXPECT_EQ(est.tripartite_se, 0.0);
  EXPECT_THROW(sample_correlators(rho, named_observable("X"), EstimatorKind::pcc, 0, 5),
               std::invalid_argument);
}

TEST(EmitTable, CsvShape) {
  std::vector<ScanRecord> records;
  for (int i = 0; i < 3; ++i) {
    records.push_back({"a", 0.1 * i, {{"F123", 0.5 + i}, {"C_GMC", 0.25 * i}}});
  }
  std::ostringstream os;
  emit_table(records, TableFormat::csv, os);
  const std::string text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.rfind("param,F123,C_GMC\n", 0), 0u);

  std::ostringstream empty;
  emit_table({}, TableFormat::csv, empty);
  EXPECT_EQ(empty.str(), "param\n");
}

TEST(EmitTable, JsonRoundTrip) {
  std::vector<ScanRecord> records;
  for (int i = 0; i < 3; ++i) {
    records.push_back({"theta", 0.3 * i, {{"F123", 0.111111111111 * i}, {"P_Z", 1.0}}});
  }
  const auto parsed = records_from_json(table_to_json(records));
  ASSERT_EQ(parsed.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(parsed[i].param_name, records[i].param_name);
    EXPECT_EQ(parsed[i].param, records[i].param);
    auto sorted = records[i].quantities;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(parsed[i].quantities, sorted);
  }
}

TEST(QuantityRegistry, EvaluatesEveryKnownId) {
  const StateFamily f{FamilyId::generalized_ghz, {{"a", 0.6}, {"b", 0.8}}};
  const DensityMatrix3Q rho = make_density(f);
  for (const auto& id : known_quantities()) {
    EXPECT_NO_THROW(evaluate_quantity(id, f, rho)) << id;
  }
}
