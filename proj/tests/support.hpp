#pragma once

#include "nicf/qring.hpp"

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>

namespace testing {

using nicf::FieldId;
using nicf::KElement;
using nicf::QuadInt;

inline constexpr long kEuclidean[] = {1, 2, 3, 7, 11};

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline QuadInt random_int(std::mt19937_64& rng, FieldId f, long bound) {
    return QuadInt(uniform(rng, -bound, bound), uniform(rng, -bound, bound), f);
}

inline KElement random_k(std::mt19937_64& rng, FieldId f, long bound, long den) {
    return KElement(random_int(rng, f, bound), mpz_class(uniform(rng, 1, den)));
}

// w from its minimal polynomial, independent of the library embedding.
inline std::complex<double> omega_c(long d) {
    if (d % 4 == 3) return {0.5, std::sqrt(double(d)) / 2};
    return {0.0, std::sqrt(double(d))};
}

inline std::complex<double> to_c(const QuadInt& x) {
    return x.a().get_d() + x.b().get_d() * omega_c(x.field().d());
}

inline std::complex<double> to_c(const KElement& x) {
    return to_c(x.num()) / x.den().get_d();
}

// x^2 + t x y + n y^2 for x + y w.
inline mpq_class norm_form(const mpq_class& x, const mpq_class& y, long d) {
    long t = d % 4 == 3 ? 1 : 0;
    long n = d % 4 == 3 ? (1 + d) / 4 : d;
    return x * x + t * x * y + n * y * y;
}

// Lattice point closest to z by search over a window; empty on a tie.
inline std::optional<QuadInt> brute_nearest(const KElement& z) {
    long d = z.field().d();
    mpq_class x = z.coord_a(), y = z.coord_b();
    long a0 = std::lround(x.get_d()), b0 = std::lround(y.get_d());
    std::optional<QuadInt> best;
    mpq_class best_n = -1;
    bool tie = false;
    for (long a = a0 - 3; a <= a0 + 3; ++a)
        for (long b = b0 - 3; b <= b0 + 3; ++b) {
            mpq_class n = norm_form(x - a, y - b, d);
            if (best_n < 0 || n < best_n) {
                best_n = n;
                best = QuadInt(a, b, z.field());
                tie = false;
            } else if (n == best_n) {
                tie = true;
            }
        }
    if (tie) return std::nullopt;
    return best;
}

}  // namespace testing
