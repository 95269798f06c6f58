#include "properties.hpp"

#include <gtest/gtest.h>

#include <iostream>

using namespace symkit::testing;

// Full-size suites; the acceptance binary runs the same code with other seeds.

namespace {

void expect_holds(const PropertyResult& r) {
    std::cout << "  " << r.summary() << '\n';
    EXPECT_TRUE(r.ok()) << r.summary();
    // a suite that mostly skips proves nothing
    EXPECT_GE(2 * (r.cases - r.skipped), r.cases) << r.summary();
}

} // namespace

TEST(Properties, CanonicalFormUnderPermutation) { expect_holds(prop_canonical_permutation(1000, 0xc0ffee)); }

TEST(Properties, GcdDivisibilityAndCoprimeCofactors) { expect_holds(prop_gcd_divisibility(500, 0xc0ffef)); }

TEST(Properties, HeuristicGcdAgreesWithSubresultant) {
    const auto r = prop_heur_matches_sr(200, 0xc0fff0);
    expect_holds(r);
    EXPECT_GT(r.cases - r.skipped, 150) << r.summary();
}

TEST(Properties, NormalIdempotentAndValuePreserving) { expect_holds(prop_normal(100, 5, 0xc0fff1)); }

TEST(Properties, DiffMatchesFiniteDifferences) { expect_holds(prop_diff_finite_difference(200, 0xc0fff2)); }

TEST(Properties, SeriesTruncationConsistency) { expect_holds(prop_series_truncation(150, 0xc0fff3)); }

TEST(Properties, ParsePrintRoundTrip) { expect_holds(prop_parse_roundtrip(500, 0xc0fff4)); }
