#pragma once

#include "nicf/ball.hpp"
#include "nicf/qring.hpp"
#include "nicf/realg.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nicf {

/// g_n = [[p_n, p_{n-1}], [q_n, q_{n-1}]].
struct ConvergentMatrix {
    std::size_t n = 0;
    QuadInt p;
    QuadInt p_prev;
    QuadInt q;
    QuadInt q_prev;

    /// p_n q_{n-1} - p_{n-1} q_n; equals (-1)^{n+1}.
    QuadInt det() const { return p * q_prev - p_prev * q; }
};

enum class ExpansionStatus { Running, TerminatedRational, PrecisionExhausted };

const char* status_name(ExpansionStatus s);

/// Per-step diagnostics, kept as doubles (the values lie in [1e-300, 1e300]).
struct StepDiagnostics {
    /// |z_n|
    double abs_remainder = 0;
    /// |q_n|^2 |z - p_n/q_n| = |q_n| |q_n z - p_n|
    double approx_error = 0;
};

struct ExpandOptions {
    bool diagnostics = true;
    long start_bits = kStartPrecision;
};

/// Nearest-integer continued fraction expansion of z.
class Expansion {
public:
    Expansion(RefinableComplex z, std::vector<QuadInt> quotients, std::vector<QuadInt> p,
              std::vector<QuadInt> q, std::vector<StepDiagnostics> diag, ExpansionStatus status,
              long high_water);

    const RefinableComplex& z() const noexcept { return z_; }
    FieldId field() const noexcept { return z_.field(); }
    std::size_t size() const noexcept { return quotients_.size(); }
    const std::vector<QuadInt>& quotients() const noexcept { return quotients_; }
    const QuadInt& quotient(std::size_t n) const;
    /// p_n and q_n; n = -1, -2 give the initial values (1, 0) and (0, 1).
    QuadInt p(long n) const;
    QuadInt q(long n) const;
    ConvergentMatrix matrix(std::size_t n) const;
    const std::vector<StepDiagnostics>& diagnostics() const noexcept { return diag_; }
    ExpansionStatus status() const noexcept { return status_; }
    /// Largest working precision (bits) used by the ball path; 0 on the exact path.
    long precision_high_water() const noexcept { return high_water_; }

private:
    RefinableComplex z_;
    std::vector<QuadInt> quotients_;
    std::vector<QuadInt> p_;
    std::vector<QuadInt> q_;
    std::vector<StepDiagnostics> diag_;
    ExpansionStatus status_;
    long high_water_;
};

/// Computes up to max_terms partial quotients a_0, a_1, ... Exact inputs
/// take the integer Euclidean path; other inputs use balls, recomputing
/// q_n z - p_n from scratch at every step. Stops with PrecisionExhausted
/// status when the precision cap is reached.
Expansion expand(const RefinableComplex& z, std::size_t max_terms, const ExpandOptions& opts = {});

/// Exact-path expansion of (A + B*w)/M, M > 0.
Expansion expand_exact(const KElement& z, std::size_t max_terms, bool diagnostics = true);

/// p_n / q_n.
KElement convergent(const Expansion& e, std::size_t n);

/// Ball for |q_n|^2 |z - p_n/q_n|.
Ball approx_error(const Expansion& e, std::size_t n, long bits = kStartPrecision);

struct RemainderView {
    std::size_t n = 0;
    Ball z_n{64};
    /// 1/z_n; empty when z_n = 0.
    std::optional<Ball> inv{};
};

/// z_n = -(q_n z - p_n)/(q_{n-1} z - p_{n-1}); precision rises until the
/// denominator is separated from 0.
RemainderView remainder(const Expansion& e, std::size_t n, long bits = kStartPrecision);

/// z_0, ..., z_{N-1} as doubles, from a single evaluation of z.
std::vector<std::complex<double>> remainder_orbit(const Expansion& e);

/// [a0; a1, ..., an] in human notation.
std::string bracket(const Expansion& e);
std::string to_json(const Expansion& e);
/// Columns n, a_n, abs_z_n, approx_error at 15 significant digits.
std::string diagnostics_csv(const Expansion& e);

}  // namespace nicf
