#pragma once

#include "nicf/cf.hpp"
#include "nicf/qring.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nicf {

/// Counter-based stream: one SplitMix64 state per (seed, index).
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();
    /// Uniform integer in [lo, hi].
    mpz_class uniform(const mpz_class& lo, const mpz_class& hi);

private:
    std::uint64_t state_;
};

struct SampleConfig {
    FieldId field{1};
    std::size_t samples = 1000;
    std::size_t terms = 20;
    std::uint64_t seed = 1;
};

/// Denominator of the dyadic sample points.
inline constexpr unsigned kSampleBits = 128;

/// Sample `index`: a point (a + b*w)/2^128 drawn uniformly from the bounding
/// box of V, redrawn until its nearest integer is 0.
KElement sample_point(const SampleConfig& cfg, std::size_t index);

struct Violation {
    std::size_t sample = 0;
    std::size_t n = 0;
    std::string detail;
};

struct ScanReport {
    std::string suite;
    long d = 0;
    std::size_t samples = 0;
    std::size_t terms = 0;
    std::uint64_t seed = 0;
    std::size_t expansions = 0;
    std::size_t terms_total = 0;
    std::vector<Violation> violations;
    std::map<std::string, double> stats;

    bool ok() const noexcept { return violations.empty(); }
};

std::string to_json(const ScanReport& r);

/// Indices n >= 1 with N(q_{n-1}) >= N(q_n).
std::vector<std::size_t> monotonicity_violations(const std::vector<QuadInt>& q);
std::vector<std::size_t> monotonicity_violations(const Expansion& e);

ScanReport check_monotonicity(const SampleConfig& cfg);

struct ForbiddenTable {
    FieldId field{7};
    std::vector<std::vector<QuadInt>> tuples;

    /// Closure under z -> u z for units u (acting as u, u^-1, u, ... along a
    /// tuple) and complex conjugation.
    ForbiddenTable closure() const;
};

/// The d = 7 pairs and the d = 11 three-, four- and five-term tuples.
/// `contextual` appends the trailing w that follows the second d = 11
/// three-term table in the monotonicity argument.
ForbiddenTable forbidden_table(FieldId field, bool contextual = false);

/// Start indices of occurrences of any tuple of `table` (used as given).
std::vector<std::pair<std::size_t, std::size_t>> find_tuples(const std::vector<QuadInt>& a,
                                                             const ForbiddenTable& table);

/// Scans with the closure of `table`.
ScanReport forbidden_scan(const SampleConfig& cfg, const ForbiddenTable& table);

struct RatioPoint {
    std::size_t n = 0;
    double re = 0;
    double im = 0;
    std::size_t sample = 0;
};

struct RatioDataset {
    std::vector<RatioPoint> points;
    ScanReport report;
};

/// q_{n-1}/q_n for 1 <= n <= max_n; asserts |q_{n-1}/q_n| < 1 and, for
/// d = 1, 3, |q_{n+2}/q_n| >= 3/2.
RatioDataset ratio_dataset(const SampleConfig& cfg, std::size_t max_n = 10);
std::string ratio_csv(const RatioDataset& r, long d);

/// Largest |q_n|^2 |z - p_n/q_n|; violation when above kappa_d + 1e-9.
ScanReport kappa_envelope(const SampleConfig& cfg);
inline constexpr double kKappaSlack = 1e-9;

/// det g_n = (-1)^{n+1}, |z_n| <= rho + 1e-12, N(a_n) > 1 for n >= 1.
ScanReport invariants_scan(const SampleConfig& cfg);

std::vector<std::string> suite_names();
/// mono, forbidden (d = 7, 11 only), ratio, kappa, invariants, or all.
std::vector<ScanReport> run_suite(const std::string& name, const SampleConfig& cfg, bool contextual = false);

}  // namespace nicf
