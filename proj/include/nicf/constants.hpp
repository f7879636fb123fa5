#pragma once

#include "nicf/ball.hpp"
#include "nicf/qring.hpp"
#include "nicf/voronoi.hpp"

#include <string>

namespace nicf {

/// Per-field constants of the nearest-integer algorithm.
///
/// `*_expr` strings are closed forms in the realg grammar; the `*_decimal`
/// strings are the same values to 30 significant digits.
struct FieldConstants {
    long d = 0;
    Surd rho;
    /// inf over z, n of (|q_n| |q_n z - p_n|)^-1
    std::string lakein_inf_expr;
    /// kappa = 1 / lakein_inf, the sup of |q_n|^2 |z - p_n/q_n|
    std::string kappa_expr;
    std::string kappa_decimal;
    /// Multiplicative constant: max(2, 1/(m inf - 1)), m the smallest |t| > 1.
    std::string alpha_expr;
    std::string alpha_decimal;
    /// rho / (1 - rho)
    std::string dirichlet_bound_decimal;
    /// Optimal Dirichlet constant for the field.
    std::string dirichlet_optimal_expr;
    std::string dirichlet_optimal_decimal;
};

const FieldConstants& constants(FieldId field);

/// Rigorous balls for the closed forms above.
Ball kappa_ball(FieldId field, long bits = 128);
Ball alpha_ball(FieldId field, long bits = 128);
Ball rho_ball(FieldId field, long bits = 128);

}  // namespace nicf
