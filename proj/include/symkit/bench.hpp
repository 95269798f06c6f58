#pragma once

#include "symkit/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symkit {

struct BenchRecord {
    std::string test_id;
    long n = 0;
    double seconds = 0.0;
    /// 64-bit FNV-1a hash of the printed result.
    std::uint64_t digest = 0;
};

/// Raised when a benchmark's correctness check fails.
class BenchFailure : public Error {
public:
    using Error::Error;
};

/// Registered test ids in a fixed order.
std::vector<std::string> bench_tests();
/// Size used when the caller has no preference.
long bench_default_n(const std::string& test_id);
/// One timed run; throws DomainError for an unknown id and BenchFailure
/// when the result is wrong.
BenchRecord bench_run(const std::string& test_id, long n);

std::string bench_csv_header();
std::string bench_csv_line(const BenchRecord& r);

std::uint64_t digest_of(const std::string& text);

} // namespace symkit
