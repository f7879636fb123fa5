#include "nicf/hermitian.hpp"

#include "nicf/constants.hpp"
#include "nicf/errors.hpp"
#include "nicf/realg.hpp"
#include "nicf/voronoi.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>

namespace nicf {

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

bool is_unimodular(const Mat2& g) { return g.det().norm() == 1; }

HermitianForm::HermitianForm(mpz_class A, QuadInt B, mpz_class C)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {}

HermitianForm HermitianForm::diag(const mpz_class& A, const mpz_class& C, FieldId field) {
    return HermitianForm(A, QuadInt(0, 0, field), C);
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

mpz_class parse_integer(const std::string& s, std::size_t offset) {
    mpz_class v;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty() || v.set_str(t, 10) != 0) throw ParseError("expected an integer", offset);
    return v;
}

}  // namespace

HermitianForm HermitianForm::parse(std::string_view text, FieldId field) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError("form must look like [A, B, C]", 0);
    std::string body = s.substr(1, s.size() - 2);
    std::size_t c1 = body.find(',');
    std::size_t c2 = c1 == std::string::npos ? c1 : body.find(',', c1 + 1);
    if (c2 == std::string::npos || body.find(',', c2 + 1) != std::string::npos) {
        throw ParseError("form needs exactly three entries", 0);
    }
    mpz_class A = parse_integer(trim(body.substr(0, c1)), 1);
    QuadInt B = QuadInt::parse(trim(body.substr(c1 + 1, c2 - c1 - 1)), field);
    mpz_class C = parse_integer(trim(body.substr(c2 + 1)), c2 + 2);
    return HermitianForm(A, B, C);
}

mpz_class HermitianForm::operator()(const QuadInt& z, const QuadInt& w) const {
    // A N(z) - 2 Re(B conj(z) w) + C N(w)
    return A_ * z.norm() - (B_ * z.conj() * w).twice_real() + C_ * w.norm();
}

Ball HermitianForm::at(const Ball& z) const {
    const mpfr_prec_t p = z.prec();
    Ball bz = ball_of(B_.conj(), p) * z;
    return scale(z * z.conj(), A_) - (bz + bz.conj()) + Ball::from_integer(C_, p);
}

Ball HermitianForm::at_second(const Ball& w) const {
    const mpfr_prec_t p = w.prec();
    Ball bw = ball_of(B_, p) * w;
    return Ball::from_integer(A_, p) - (bw + bw.conj()) + scale(w * w.conj(), C_);
}

std::string HermitianForm::to_string() const {
    return "[" + A_.get_str() + ", " + B_.to_string() + ", " + C_.get_str() + "]";
}

bool FormLess::operator()(const HermitianForm& x, const HermitianForm& y) const {
    if (int c = cmp(x.A(), y.A())) return c < 0;
    if (int c = cmp(x.B().a(), y.B().a())) return c < 0;
    if (int c = cmp(x.B().b(), y.B().b())) return c < 0;
    return cmp(x.C(), y.C()) < 0;
}

HermitianForm act(const Mat2& g, const HermitianForm& H) {
    if (!is_unimodular(g)) throw DomainError("matrix determinant is not a unit");
    const FieldId f = H.field();
    // adj(g)^* M adj(g), M = [[A, -B], [-conj B, C]]
    const Mat2 adj{g.d, -g.b, -g.c, g.a};
    const Mat2 adj_star{adj.a.conj(), adj.c.conj(), adj.b.conj(), adj.d.conj()};
    const Mat2 m{QuadInt(H.A(), 0, f), -H.B(), -H.B().conj(), QuadInt(H.C(), 0, f)};
    const Mat2 r = adj_star * m * adj;
    if (r.a.b() != 0 || r.d.b() != 0) throw DomainError("twisted form is not Hermitian");
    return HermitianForm(r.a.a(), -r.b, r.d.a());
}

Circle zero_circle(const HermitianForm& H) {
    if (!H.is_indefinite()) throw DomainError("form is definite");
    Circle c;
    if (H.A() == 0) {
        c.is_line = true;
        c.line_b = H.B();
        c.line_c = H.C();
        c.center = KElement(H.field());
        return c;
    }
    c.center = KElement(H.B(), H.A());
    c.radius2 = mpq_class(-H.delta(), H.A() * H.A());
    c.radius2.canonicalize();
    c.line_b = QuadInt(H.field());
    return c;
}

Circle remainder_circle(const HermitianForm& H) {
    return zero_circle(HermitianForm(H.C(), H.B().conj(), H.A()));
}

namespace {

struct Pt {
    double x, y;
};

Pt embed_double(const KElement& k) {
    const FieldId f = k.field();
    const double a = k.coord_a().get_d(), b = k.coord_b().get_d();
    const double s = std::sqrt(static_cast<double>(f.d())) * (f.half_basis() ? 0.5 : 1.0);
    return {a + b * f.omega_trace() / 2.0, b * s};
}

bool inside(const std::vector<Pt>& poly, Pt p) {
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Pt a = poly[k], b = poly[(k + 1) % poly.size()];
        if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < -1e-12) return false;
    }
    return true;
}

double deg(double rad) {
    double d = rad * 180.0 / std::numbers::pi;
    while (d < 0) d += 360.0;
    while (d >= 360.0) d -= 360.0;
    return d;
}

}  // namespace

std::vector<CellArc> arcs_in_cell(const Circle& c, FieldId field) {
    std::vector<CellArc> out;
    if (c.is_line) return out;
    std::vector<Pt> poly;
    for (const Ball& v : cell_geometry(field, 64).vertices) poly.push_back({v.re_double(), v.im_double()});
    const Pt m = embed_double(c.center);
    const double r = std::sqrt(c.radius2.get_d());
    std::vector<double> angles;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Pt a = poly[k], b = poly[(k + 1) % poly.size()];
        const double dx = b.x - a.x, dy = b.y - a.y, fx = a.x - m.x, fy = a.y - m.y;
        const double qa = dx * dx + dy * dy, qb = 2 * (fx * dx + fy * dy), qc = fx * fx + fy * fy - r * r;
        const double disc = qb * qb - 4 * qa * qc;
        if (disc < 0) continue;
        for (double sgn : {-1.0, 1.0}) {
            const double s = (-qb + sgn * std::sqrt(disc)) / (2 * qa);
            if (s < 0 || s > 1) continue;
            angles.push_back(deg(std::atan2(a.y + s * dy - m.y, a.x + s * dx - m.x)));
        }
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(), [](double x, double y) { return y - x < 1e-12; }),
                 angles.end());
    auto at = [&](double d) {
        const double t = d * std::numbers::pi / 180.0;
        return Pt{m.x + r * std::cos(t), m.y + r * std::sin(t)};
    };
    if (angles.size() < 2) {
        if (inside(poly, at(angles.empty() ? 0.0 : angles[0] + 180.0))) out.push_back({0, 360});
        return out;
    }
    for (std::size_t k = 0; k < angles.size(); ++k) {
        const double from = angles[k];
        double to = k + 1 < angles.size() ? angles[k + 1] : angles[0] + 360.0;
        if (inside(poly, at((from + to) / 2))) out.push_back({from, to > 360.0 ? to - 360.0 : to});
    }
    return out;
}

std::string orbit_csv(const FormOrbit& o) {
    std::string out = "n,A_n,B_n_a,B_n_b,C_n,first_seen\n";
    for (const auto& s : o.steps) {
        out += std::to_string(s.n) + "," + s.form.A().get_str() + "," + s.form.B().a().get_str() + "," +
               s.form.B().b().get_str() + "," + s.form.C().get_str() + "," + std::to_string(s.first_seen) + "\n";
    }
    return out;
}

namespace {

double to15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

}  // namespace

std::string orbit_arcs_json(const FormOrbit& o) {
    using json = nlohmann::ordered_json;
    const FieldId f = o.base.field();
    std::vector<std::pair<std::size_t, const HermitianForm*>> forms;
    for (const auto& [form, first] : o.distinct) forms.emplace_back(first, &form);
    std::sort(forms.begin(), forms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    json j;
    j["d"] = f.d();
    j["forms"] = forms.size();
    json arcs = json::array();
    for (const auto& [first, form] : forms) {
        json a;
        a["form"] = json::array({json::parse(form->A().get_str()), form->B().pretty(), json::parse(form->C().get_str())});
        a["first_seen"] = first;
        const Circle c = remainder_circle(*form);
        if (c.is_line) {
            a["line"] = json::array({c.line_b.pretty(), json::parse(c.line_c.get_str())});
        } else {
            const Pt m = embed_double(c.center);
            a["center"] = json::array({to15(m.x), to15(m.y)});
            a["radius"] = to15(std::sqrt(c.radius2.get_d()));
            json pieces = json::array();
            for (const auto& p : arcs_in_cell(c, f)) pieces.push_back({{"from_deg", to15(p.from_deg)}, {"to_deg", to15(p.to_deg)}});
            a["pieces"] = pieces;
        }
        arcs.push_back(a);
    }
    j["arcs"] = arcs;
    return j.dump() + "\n";
}

namespace {

unsigned long valuation(mpz_class& x, const mpz_class& p) {
    unsigned long v = 0;
    while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

// (x - 1)/2 mod 2 and (x^2 - 1)/8 mod 2 for odd x
int eps(const mpz_class& x) {
    unsigned long r = mpz_fdiv_ui(x.get_mpz_t(), 4);
    return r == 3 ? 1 : 0;
}
int omega2(const mpz_class& x) {
    unsigned long r = mpz_fdiv_ui(x.get_mpz_t(), 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

// Distinct prime divisors of |x| (x != 0).
std::vector<mpz_class> prime_divisors(mpz_class x) {
    std::vector<mpz_class> out;
    x = abs(x);
    for (unsigned long p = 2; p <= 1000000; ++p) {
        if (x == 1) return out;
        if (mpz_cmp_ui(x.get_mpz_t(), p * p) < 0) break;
        if (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(x.get_mpz_t(), p)) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
        }
    }
    if (x != 1) {
        if (mpz_probab_prime_p(x.get_mpz_t(), 30) == 0) throw DomainError("integer too large to factor");
        out.push_back(x);
    }
    return out;
}

}  // namespace

int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p) {
    if (a == 0 || b == 0) throw DomainError("Hilbert symbol needs nonzero arguments");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    mpz_class u = a, v = b;
    const unsigned long al = valuation(u, p);
    const unsigned long be = valuation(v, p);
    if (p == 2) {
        int e = eps(u) * eps(v) + static_cast<int>(al % 2) * omega2(v) + static_cast<int>(be % 2) * omega2(u);
        return e % 2 ? -1 : 1;
    }
    int s = 1;
    if ((al * be) % 2 == 1 && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) s = -s;
    if (be % 2 == 1) s *= mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
    if (al % 2 == 1) s *= mpz_legendre(v.get_mpz_t(), p.get_mpz_t());
    return s;
}

bool is_norm(const mpq_class& n, FieldId field) {
    if (n <= 0) throw DomainError("is_norm needs a positive rational");
    // n and num*den agree up to squares
    const mpz_class m = n.get_num() * n.get_den();
    const mpz_class disc = field.discriminant();
    std::set<mpz_class> places = {mpz_class(0), mpz_class(2)};
    for (const auto& p : prime_divisors(m)) places.insert(p);
    for (const auto& p : prime_divisors(disc)) places.insert(p);
    for (const auto& p : places) {
        if (hilbert_symbol(m, disc, p) != 1) return false;
    }
    return true;
}

std::optional<KElement> norm_witness(const mpq_class& n, FieldId field, long max_den) {
    if (n <= 0) return std::nullopt;
    // x = (a + b sqrt(-d))/(c s), N(x) = n = r/s  <=>  a^2 + d b^2 = r s c^2
    const mpz_class r = n.get_num(), s = n.get_den();
    const long d = field.d();
    for (long c = 1; c <= max_den; ++c) {
        const mpz_class target = r * s * c * c;
        mpz_class b = 0, rest, a;
        for (;; ++b) {
            rest = target - d * b * b;
            if (rest < 0) break;
            if (mpz_perfect_square_p(rest.get_mpz_t())) {
                mpz_sqrt(a.get_mpz_t(), rest.get_mpz_t());
                // sqrt(-d) = w, or 2w - 1 when w = (1 + sqrt(-d))/2
                QuadInt num = field.half_basis() ? QuadInt(a - b, 2 * b, field) : QuadInt(a, b, field);
                return KElement(num, c * s);
            }
        }
    }
    return std::nullopt;
}

bool is_isotropic(const HermitianForm& H) {
    if (!H.is_indefinite()) throw DomainError("form is definite");
    return is_norm(mpq_class(-H.delta()), H.field());
}

FormOrbit orbit(const HermitianForm& H, const Expansion& e, std::size_t count) {
    const FieldId f = H.field();
    if (!(e.field() == f)) throw FieldMismatch();
    if (!H.is_indefinite()) throw DomainError("form is definite");
    if (count > e.size()) throw DomainError("expansion too short for the requested orbit");
    if (!H.at(e.z().eval_adaptive()).contains_zero()) throw DomainError("z does not lie on the zero set of H");
    FormOrbit out{H, {}, {}};
    out.steps.reserve(count);
    const mpz_class delta = H.delta();
    HermitianForm cur = H;
    for (std::size_t n = 0; n < count; ++n) {
        const QuadInt& a = e.quotients()[n];
        // H_n = (g_{n-1} S_n)^* H g_{n-1} S_n with S_n = [[a_n, 1], [1, 0]]
        const Mat2 s_inv{QuadInt(0, 0, f), QuadInt(1, 0, f), QuadInt(1, 0, f), -a};
        HermitianForm next = act(s_inv, cur);
        const long k = static_cast<long>(n);
        if (next.A() != H(e.p(k), e.q(k))) throw Error("orbit check failed: A_n != H(p_n, q_n)");
        if (next.C() != cur.A()) throw Error("orbit check failed: C_n != A_{n-1}");
        if (next.delta() != delta) throw Error("orbit check failed: determinant changed");
        auto [it, inserted] = out.distinct.emplace(next, n);
        out.steps.push_back(OrbitStep{n, next, it->second});
        cur = std::move(next);
    }
    return out;
}

Ball eta(const HermitianForm& H, long bits) {
    if (!H.is_indefinite()) throw DomainError("form is definite");
    const FieldId f = H.field();
    const Ball k = kappa_ball(f, bits);
    const mpfr_prec_t p = k.prec();
    const Ball absA = Ball::from_integer(abs(H.A()), p);
    const Ball absB = *sqrt(Ball::from_integer(H.B().norm(), p));
    const Ball root = *sqrt(Ball::from_integer(-H.delta(), p));
    Ball second = absA * k * k + scale(absB * k, mpz_class(4)) + scale(k * root, mpz_class(2));
    return max(absA, second);
}

OrbitBounds orbit_bounds(const HermitianForm& H, long bits) {
    if (is_isotropic(H)) throw DomainError("isotropic form: orbit bounds do not apply");
    OrbitBounds b;
    b.eta = eta(H, bits);
    const mpfr_prec_t p = b.eta.prec();
    const Ball minus_delta = Ball::from_integer(-H.delta(), p);
    const Ball s1 = *sqrt(minus_delta);
    const Ball s2 = *sqrt(b.eta * b.eta + minus_delta);
    b.z_min = *inverse(s1 + s2);
    b.a_max = rho_ball(H.field(), bits) + s1 + s2;
    return b;
}

ExteriorDisk disk_image(const Mat2& g, const QuadInt& p, const QuadInt& q, const mpq_class& C) {
    if (!is_unimodular(g)) throw DomainError("matrix determinant is not a unit");
    if (C <= 0) throw DomainError("C must be positive");
    if (q.is_zero() || !(g.c * p + g.d * q).is_zero() || g.c.norm() != q.norm()) {
        throw DomainError("g does not send p/q to infinity with matching denominator");
    }
    return ExteriorDisk{KElement(g.a) / KElement(g.c), mpq_class(1 / C)};
}

}  // namespace nicf
