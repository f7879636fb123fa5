#pragma once

#include "nicf/ball.hpp"
#include "nicf/expr.hpp"
#include "nicf/qring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nicf {

/// coeff * sqrt(radicand), radicand squarefree.
struct Surd {
    mpq_class coeff;
    unsigned long radicand = 1;

    Ball ball(mpfr_prec_t prec) const;
    Expr expr() const;
    /// coeff^2 * radicand.
    mpq_class square() const { return coeff * coeff * radicand; }
};

/// Circumradius rho_d of the cell V_d.
Surd rho(FieldId field);

/// Neighbour set R: {+-1, +-w} for d = 1, 2 and {+-1, +-w, +-(w-1)} otherwise.
std::vector<QuadInt> neighbors(FieldId field);

/// Lattice points that may be nearest to a point with basis coordinates
/// near (s, t): the four corners of the enclosing parallelogram and their
/// R-neighbours, without duplicates.
std::vector<QuadInt> candidates(const mpz_class& s_floor, const mpz_class& t_floor, FieldId field);

/// Nearest lattice point of every point of the ball; empty when the ball
/// cannot be placed inside a single cell at its precision.
std::optional<QuadInt> nearest_integer(const Ball& z, FieldId field);

/// Exact nearest lattice point. Ties are broken by minimising
/// (N(z - r), Re r, Im r) lexicographically.
QuadInt nearest_integer(const KElement& z);
/// Same for (A + B*w)/M with M > 0, without normalising the fraction.
QuadInt nearest_integer_frac(const mpz_class& A, const mpz_class& B, const mpz_class& M, FieldId field);

struct RoundingResult {
    QuadInt integer_part;
    Ball remainder;
};

std::optional<RoundingResult> round_ball(const Ball& z, FieldId field);

enum class CellPosition { Inside, Outside, Undecided };

CellPosition in_cell(const Ball& z, FieldId field);

struct Arc {
    Ball center{64};
    Ball radius{64};
    double from_deg = 0;
    double to_deg = 0;
};

struct CellGeometry {
    /// Counter-clockwise vertex list of the boundary of V.
    std::vector<Ball> vertices;
    /// Images of the cell walls under z -> 1/z (boundary of V^-1).
    std::vector<Arc> inverse_arcs;
    /// Neighbour r owning each arc.
    std::vector<QuadInt> arc_owner;
};

CellGeometry cell_geometry(FieldId field, mpfr_prec_t prec = 256);
/// `{"vertices": [[x,y],...], "inverse_arcs": [...]}` with 30-digit decimals.
std::string cell_geometry_json(FieldId field);

}  // namespace nicf
