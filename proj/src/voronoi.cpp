#include "nicf/voronoi.hpp"

#include "nicf/errors.hpp"
#include "nicf/realg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

namespace nicf {

Ball Surd::ball(mpfr_prec_t prec) const { return scale(Ball::sqrt_of(radicand, prec), coeff); }

Expr Surd::expr() const {
    if (radicand == 1) return Expr::rational(coeff);
    Expr root = Expr::sqrt(Expr::integer(radicand));
    if (coeff == 1) return root;
    return Expr::rational(coeff) * root;
}

Surd rho(FieldId field) {
    field.require_euclidean();
    switch (field.d()) {
        case 1: return {mpq_class(1, 2), 2};
        case 2: return {mpq_class(1, 2), 3};
        case 3: return {mpq_class(1, 3), 3};
        case 7: return {mpq_class(2, 7), 7};
        default: return {mpq_class(3, 11), 11};
    }
}

std::vector<QuadInt> neighbors(FieldId field) {
    field.require_euclidean();
    std::vector<QuadInt> r = {QuadInt(1, 0, field), QuadInt(-1, 0, field), QuadInt(0, 1, field),
                              QuadInt(0, -1, field)};
    if (field.half_basis()) {
        r.emplace_back(-1, 1, field);
        r.emplace_back(1, -1, field);
    }
    return r;
}

std::vector<QuadInt> candidates(const mpz_class& s, const mpz_class& t, FieldId field) {
    std::set<QuadInt, QuadIntLess> seen;
    const auto nb = neighbors(field);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            QuadInt c(s + i, t + j, field);
            seen.insert(c);
            for (const auto& r : nb) seen.insert(c + r);
        }
    }
    return {seen.begin(), seen.end()};
}

namespace {

// Re(z) and Im(z)*sqrt(d)*(1 or 1/2) as real balls, so that for
// delta = alpha + beta*w: 2 Re(z conj(delta)) = (2 alpha + beta t) X + 2 beta Y.
struct Coordinates {
    Ball x;
    Ball y;
};

Coordinates split(const Ball& z, FieldId field) {
    const mpfr_prec_t p = z.prec();
    Ball x = z.real_part();
    Ball y = (z * -Ball::imag_unit(p)).real_part();
    Ball s = Ball::sqrt_of(static_cast<unsigned long>(field.d()), p);
    if (field.half_basis()) s = scale(s, mpq_class(1, 2));
    return {std::move(x), y * s};
}

// Lower bound of N(r1) - N(r0) - 2 Re(z conj(r1 - r0)) is positive.
bool strictly_closer(const Coordinates& c, const QuadInt& r0, const QuadInt& r1) {
    QuadInt delta = r1 - r0;
    mpz_class dn = r1.norm() - r0.norm();
    mpz_class kx = delta.twice_real();
    mpz_class ky = 2 * delta.b();
    Ball f = scale(c.x, kx) + scale(c.y, ky);
    // need f < dn for every point
    Real hi(f.prec() + 8);
    mpfr_add(hi.get(), f.re().get(), f.rad().get(), MPFR_RNDU);
    return mpfr_cmp_z(hi.get(), dn.get_mpz_t()) < 0;
}

// Floors of the basis coordinates of the ball center.
std::pair<mpz_class, mpz_class> coordinate_floors(const Ball& z, FieldId field) {
    long e = std::max<long>(0, std::max(mpfr_get_exp(z.re().get()), mpfr_get_exp(z.im().get())));
    if (z.re().is_zero() && z.im().is_zero()) e = 0;
    const mpfr_prec_t p = 96 + e;
    Real re(p), im(p), sd(p), t(p), s(p);
    mpfr_set(re.get(), z.re().get(), MPFR_RNDN);
    mpfr_set(im.get(), z.im().get(), MPFR_RNDN);
    mpfr_sqrt_ui(sd.get(), static_cast<unsigned long>(field.d()), MPFR_RNDN);
    mpfr_div(t.get(), im.get(), sd.get(), MPFR_RNDN);
    if (field.half_basis()) mpfr_mul_2ui(t.get(), t.get(), 1, MPFR_RNDN);
    mpfr_set(s.get(), re.get(), MPFR_RNDN);
    if (field.half_basis()) {
        Real half(p);
        mpfr_div_2ui(half.get(), t.get(), 1, MPFR_RNDN);
        mpfr_sub(s.get(), s.get(), half.get(), MPFR_RNDN);
    }
    mpz_class fs, ft;
    mpfr_get_z(fs.get_mpz_t(), s.get(), MPFR_RNDD);
    mpfr_get_z(ft.get_mpz_t(), t.get(), MPFR_RNDD);
    return {fs, ft};
}

double approx_dist2(const Ball& z, const QuadInt& r, FieldId field) {
    const double sd = std::sqrt(static_cast<double>(field.d()));
    const double rb = r.b().get_d();
    const double rre = r.a().get_d() + (field.half_basis() ? rb / 2 : 0.0);
    const double rim = rb * (field.half_basis() ? sd / 2 : sd);
    const double dx = z.re_double() - rre, dy = z.im_double() - rim;
    return dx * dx + dy * dy;
}

std::optional<QuadInt> decide(const Ball& z, FieldId field) {
    auto [fs, ft] = coordinate_floors(z, field);
    std::vector<QuadInt> cand = candidates(fs, ft, field);
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) order.emplace_back(approx_dist2(z, cand[i], field), i);
    std::sort(order.begin(), order.end());
    const Coordinates c = split(z, field);
    const std::size_t tries = std::min<std::size_t>(3, order.size());
    for (std::size_t k = 0; k < tries; ++k) {
        const QuadInt& best = cand[order[k].second];
        bool ok = true;
        for (const auto& other : cand) {
            if (other == best) continue;
            if (!strictly_closer(c, best, other)) {
                ok = false;
                break;
            }
        }
        if (ok) return best;
    }
    return std::nullopt;
}

}  // namespace

std::optional<QuadInt> nearest_integer(const Ball& z, FieldId field) {
    field.require_euclidean();
    constexpr mpfr_prec_t kQuick = 128;
    if (z.prec() > kQuick) {
        if (auto r = decide(z.with_prec(kQuick), field)) return r;
    }
    return decide(z, field);
}

QuadInt nearest_integer(const KElement& z) {
    z.field().require_euclidean();
    return nearest_integer_frac(z.num().a(), z.num().b(), z.den(), z.field());
}

QuadInt nearest_integer_frac(const mpz_class& A, const mpz_class& B, const mpz_class& M, FieldId field) {
    mpz_class s0, t0;
    mpz_fdiv_q(s0.get_mpz_t(), A.get_mpz_t(), M.get_mpz_t());
    mpz_fdiv_q(t0.get_mpz_t(), B.get_mpz_t(), M.get_mpz_t());
    const long tr = field.omega_trace();
    bool have = false;
    mpz_class best_n, best_re, best_im, ra, rb;
    QuadInt best(field);
    // The four corners of the enclosing parallelogram: its two triangles
    // are acute for every Euclidean d, so the nearest point is a corner.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mpz_class a = s0 + i, b = t0 + j;
            ra = A - a * M;
            rb = B - b * M;
            QuadInt diff(ra, rb, field);
            mpz_class n = diff.norm();
            mpz_class re = 2 * a + b * tr;
            bool better = !have;
            if (have) {
                int c = cmp(n, best_n);
                if (c == 0) c = cmp(re, best_re);
                if (c == 0) c = cmp(b, best_im);
                better = c < 0;
            }
            if (better) {
                have = true;
                best_n = n;
                best_re = re;
                best_im = b;
                best = QuadInt(a, b, field);
            }
        }
    }
    return best;
}

std::optional<RoundingResult> round_ball(const Ball& z, FieldId field) {
    auto q = nearest_integer(z, field);
    if (!q) return std::nullopt;
    return RoundingResult{*q, z - ball_of(*q, z.prec())};
}

CellPosition in_cell(const Ball& z, FieldId field) {
    field.require_euclidean();
    const Coordinates c = split(z, field);
    const QuadInt zero(field);
    bool inside = true;
    for (const auto& r : neighbors(field)) {
        if (!strictly_closer(c, zero, r)) inside = false;
        // certainly on r's side of the wall
        if (strictly_closer(c, r, zero)) return CellPosition::Outside;
    }
    if (inside) return CellPosition::Inside;
    // Distance from the center to the polygon, with a relative safety margin.
    const CellGeometry g = cell_geometry(field, 64);
    const double px = z.re_double(), py = z.im_double();
    double best = INFINITY;
    const std::size_t nv = g.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const double ax = g.vertices[i].re_double(), ay = g.vertices[i].im_double();
        const double bx = g.vertices[(i + 1) % nv].re_double(), by = g.vertices[(i + 1) % nv].im_double();
        const double ex = bx - ax, ey = by - ay;
        double u = ((px - ax) * ex + (py - ay) * ey) / (ex * ex + ey * ey);
        u = std::clamp(u, 0.0, 1.0);
        const double dx = px - (ax + u * ex), dy = py - (ay + u * ey);
        best = std::min(best, std::hypot(dx, dy));
    }
    const double rad = z.rad_double();
    if (best > rad * (1 + 1e-9) + 1e-12) {
        // center outside (no half-plane held strictly, and far from every edge)
        bool all_in = true;
        for (const auto& r : neighbors(field)) {
            const double sd = std::sqrt(static_cast<double>(field.d()));
            const double rb = r.b().get_d();
            const double rre = r.a().get_d() + (field.half_basis() ? rb / 2 : 0.0);
            const double rim = rb * (field.half_basis() ? sd / 2 : sd);
            if (2 * (px * rre + py * rim) > rre * rre + rim * rim) all_in = false;
        }
        if (!all_in) return CellPosition::Outside;
    }
    return CellPosition::Undecided;
}

namespace {

Ball point(const mpq_class& x, const Ball& y, mpfr_prec_t prec) {
    return Ball::from_rational(x, prec) + Ball::imag_unit(prec) * y;
}

double arg_deg(const Ball& z) {
    return std::atan2(z.im_double(), z.re_double()) * 180.0 / std::numbers::pi;
}

}  // namespace

CellGeometry cell_geometry(FieldId field, mpfr_prec_t prec) {
    field.require_euclidean();
    CellGeometry g;
    const long d = field.d();
    const Ball sd = Ball::sqrt_of(static_cast<unsigned long>(d), prec);
    const mpq_class h(1, 2);
    if (!field.half_basis()) {
        Ball y = scale(sd, h);
        g.vertices = {point(h, -y, prec), point(h, y, prec), point(-h, y, prec), point(-h, -y, prec)};
    } else {
        // (+-1/2, +-(d-1)/(4 sqrt d)) and (0, +-(1+d)/(4 sqrt d))
        Ball inv = *inverse(sd);
        Ball lo = scale(inv, mpq_class(d - 1, 4));
        Ball hi = scale(inv, mpq_class(d + 1, 4));
        g.vertices = {point(h, -lo, prec), point(h, lo, prec),   point(0, hi, prec),
                      point(-h, lo, prec), point(-h, -lo, prec), point(0, -hi, prec)};
    }
    const std::size_t nv = g.vertices.size();
    for (const auto& r : neighbors(field)) {
        // wall: 2 Re(z conj r) = N(r); find the edge whose endpoints lie on it
        const Ball rb = ball_of(r, prec);
        const double nr = r.norm().get_d();
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < nv; ++i) {
            Ball prod = g.vertices[i] * rb.conj();
            if (std::abs(2 * prod.re_double() - nr) < 1e-12) on.push_back(i);
        }
        if (on.size() != 2) throw DomainError("cell wall lookup failed");
        Ball inv_r = *inverse(rb);
        Ball from = *inverse(g.vertices[on[0]]);
        Ball to = *inverse(g.vertices[on[1]]);
        Arc a;
        a.center = inv_r;
        a.radius = inv_r.abs();
        double a0 = arg_deg(from - inv_r), a1 = arg_deg(to - inv_r), az = arg_deg(-inv_r);
        auto norm_after = [](double v, double base) {
            while (v <= base) v += 360;
            while (v > base + 360) v -= 360;
            return v;
        };
        a1 = norm_after(a1, a0);
        if (norm_after(az, a0) < a1) {
            std::swap(a0, a1);
            a1 = norm_after(a1, a0);
        }
        const double shift = 360.0 * std::floor(a0 / 360.0 + 1e-12);
        a.from_deg = a0 - shift;
        a.to_deg = a1 - shift;
        g.inverse_arcs.push_back(a);
        g.arc_owner.push_back(r);
    }
    return g;
}

namespace {

std::string dec30(const Real& v) { return v.to_string(30); }

std::string deg30(const Ball& v, const Ball& center, double approx) {
    // high-precision angle of v - center in degrees, placed on the same turn as approx
    Ball d = v - center;
    const mpfr_prec_t p = d.prec();
    Real a(p), pi(p);
    mpfr_atan2(a.get(), d.im().get(), d.re().get(), MPFR_RNDN);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    mpfr_mul_ui(a.get(), a.get(), 180, MPFR_RNDN);
    mpfr_div(a.get(), a.get(), pi.get(), MPFR_RNDN);
    const double turns = std::round((approx - a.to_double()) / 360.0);
    mpfr_add_si(a.get(), a.get(), static_cast<long>(turns) * 360, MPFR_RNDN);
    if (mpfr_get_exp(a.get()) < -static_cast<long>(p) / 2) mpfr_set_zero(a.get(), 1);
    return dec30(a);
}

}  // namespace

std::string cell_geometry_json(FieldId field) {
    const CellGeometry g = cell_geometry(field, 256);
    std::string out = "{\"d\": " + std::to_string(field.d()) + ", \"vertices\": [";
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (i) out += ", ";
        out += "[" + dec30(g.vertices[i].re()) + ", " + dec30(g.vertices[i].im()) + "]";
    }
    out += "], \"inverse_arcs\": [";
    const std::size_t nv = g.vertices.size();
    for (std::size_t k = 0; k < g.inverse_arcs.size(); ++k) {
        const Arc& a = g.inverse_arcs[k];
        // endpoints: images of the two wall vertices, in the arc's angular order
        std::vector<Ball> ends;
        for (std::size_t i = 0; i < nv; ++i) {
            Ball img = *inverse(g.vertices[i]);
            Ball rel = img - a.center;
            Ball diff = rel.abs() - a.radius;
            if (std::abs(diff.re_double()) < 1e-20) ends.push_back(img);
        }
        std::string from_s, to_s;
        for (const auto& e : ends) {
            double ang = arg_deg(e - a.center);
            double df = std::remainder(ang - a.from_deg, 360.0), dt = std::remainder(ang - a.to_deg, 360.0);
            if (std::abs(df) < 1e-6) from_s = deg30(e, a.center, a.from_deg);
            if (std::abs(dt) < 1e-6) to_s = deg30(e, a.center, a.to_deg);
        }
        if (k) out += ", ";
        out += "{\"center\": [" + dec30(a.center.re()) + ", " + dec30(a.center.im()) +
               "], \"radius\": " + dec30(a.radius.re()) + ", \"from_deg\": " + from_s +
               ", \"to_deg\": " + to_s + ", \"neighbor\": \"" + g.arc_owner[k].to_string() + "\"}";
    }
    out += "]}\n";
    return out;
}

}  // namespace nicf
