#pragma once

#include <cstdint>
#include <string>

namespace symkit::testing {

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    /// Cases the property does not apply to (heuristic gcd gave up, singular point).
    int skipped = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && cases > 0; }
    std::string summary() const;
};

/// build_add / build_mul over shuffled operands: cmp, hash and print agree.
PropertyResult prop_canonical_permutation(int cases, std::uint64_t seed);
/// g = gcd(f*g1, f*h1): g divides both, f divides g, cofactors coprime.
PropertyResult prop_gcd_divisibility(int cases, std::uint64_t seed);
/// heur_gcd equals sr_gcd up to sign whenever it succeeds.
PropertyResult prop_heur_matches_sr(int cases, std::uint64_t seed);
/// normal(normal(e)) == normal(e) and both evaluate alike at random rational
/// points (20 digits, 1e-10 relative).
PropertyResult prop_normal(int cases, int points, std::uint64_t seed);
/// evalf(diff(f)) against central differences (1e-8 relative).
PropertyResult prop_diff_finite_difference(int cases, std::uint64_t seed);
/// series_of at order N equals series_of at order M > N truncated to N.
PropertyResult prop_series_truncation(int cases, std::uint64_t seed);
/// parse(to_string(e)) == e.
PropertyResult prop_parse_roundtrip(int cases, std::uint64_t seed);

} // namespace symkit::testing
