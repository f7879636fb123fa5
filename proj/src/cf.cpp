#include "nicf/cf.hpp"

#include "nicf/errors.hpp"
#include "nicf/voronoi.hpp"

#include <json.hpp>

#include <algorithm>
#include <complex>
#include <cstdio>
#include <sstream>

namespace nicf {

const char* status_name(ExpansionStatus s) {
    switch (s) {
        case ExpansionStatus::Running: return "running";
        case ExpansionStatus::TerminatedRational: return "terminated-rational";
        case ExpansionStatus::PrecisionExhausted: return "precision-exhausted";
    }
    return "unknown";
}

Expansion::Expansion(RefinableComplex z, std::vector<QuadInt> quotients, std::vector<QuadInt> p,
                     std::vector<QuadInt> q, std::vector<StepDiagnostics> diag, ExpansionStatus status,
                     long high_water)
    : z_(std::move(z)),
      quotients_(std::move(quotients)),
      p_(std::move(p)),
      q_(std::move(q)),
      diag_(std::move(diag)),
      status_(status),
      high_water_(high_water) {}

const QuadInt& Expansion::quotient(std::size_t n) const {
    if (n >= quotients_.size()) throw IndexOutOfRange(n, quotients_.size());
    return quotients_[n];
}

QuadInt Expansion::p(long n) const {
    if (n == -1) return QuadInt(1, 0, field());
    if (n == -2) return QuadInt(0, 0, field());
    if (n < 0 || static_cast<std::size_t>(n) >= p_.size()) throw IndexOutOfRange(static_cast<std::size_t>(n), p_.size());
    return p_[static_cast<std::size_t>(n)];
}

QuadInt Expansion::q(long n) const {
    if (n == -1) return QuadInt(0, 0, field());
    if (n == -2) return QuadInt(1, 0, field());
    if (n < 0 || static_cast<std::size_t>(n) >= q_.size()) throw IndexOutOfRange(static_cast<std::size_t>(n), q_.size());
    return q_[static_cast<std::size_t>(n)];
}

ConvergentMatrix Expansion::matrix(std::size_t n) const {
    if (n >= size()) throw IndexOutOfRange(n, size());
    const long k = static_cast<long>(n);
    return ConvergentMatrix{n, p(k), p(k - 1), q(k), q(k - 1)};
}

namespace {

long bits_of(const QuadInt& x) {
    return static_cast<long>(std::max(mpz_sizeinbase(x.a().get_mpz_t(), 2), mpz_sizeinbase(x.b().get_mpz_t(), 2)));
}

// Balls for z, w*z and w at one working precision.
struct BallState {
    long bits = 0;
    Ball z{64};
    Ball wz{64};
    Ball w{64};

    // Fills the state; false when z cannot be evaluated at this precision.
    bool init(const RefinableComplex& x, long b) {
        auto zb = x.eval(b);
        if (!zb) return false;
        bits = b;
        z = std::move(*zb);
        w = ball_of(QuadInt::omega(x.field()), z.prec());
        wz = w * z;
        return true;
    }

    // q z - p
    Ball u(const QuadInt& q, const QuadInt& p) const {
        Ball r = scale(z, q.a());
        if (q.b() != 0) r = r + scale(wz, q.b());
        if (p.b() != 0) r = r - scale(w, p.b());
        return add_integer(r, -p.a());
    }
};

double abs_ratio(const Ball& num, const Ball& den) {
    Real a(64), b(64);
    mpfr_hypot(a.get(), num.re().get(), num.im().get(), MPFR_RNDN);
    mpfr_hypot(b.get(), den.re().get(), den.im().get(), MPFR_RNDN);
    if (b.is_zero()) return 0;
    mpfr_div(a.get(), a.get(), b.get(), MPFR_RNDN);
    return a.to_double();
}

// sqrt(N(q)) * |u|
double scaled_abs(const QuadInt& q, const Ball& u) {
    Real nq(64), a(64);
    mpz_class n = q.norm();
    mpfr_set_z(nq.get(), n.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(nq.get(), nq.get(), MPFR_RNDN);
    mpfr_hypot(a.get(), u.re().get(), u.im().get(), MPFR_RNDN);
    mpfr_mul(a.get(), a.get(), nq.get(), MPFR_RNDN);
    return a.to_double();
}

// sqrt(x / y) for integers
double sqrt_ratio(const mpz_class& x, const mpz_class& y) {
    Real a(64), b(64);
    mpfr_set_z(a.get(), x.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(b.get(), y.get_mpz_t(), MPFR_RNDN);
    mpfr_div(a.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_sqrt(a.get(), a.get(), MPFR_RNDN);
    return a.to_double();
}

Expansion expand_exact_impl(const RefinableComplex& z, const KElement& k, std::size_t max_terms, bool diagnostics) {
    const FieldId f = k.field();
    f.require_euclidean();
    std::vector<QuadInt> quot, ps, qs;
    std::vector<StepDiagnostics> diag;
    quot.reserve(max_terms);
    ps.reserve(max_terms);
    qs.reserve(max_terms);
    if (diagnostics) diag.reserve(max_terms);
    const mpz_class& M = k.den();
    // U_n = M (q_n z - p_n); U_{-2} = M z, U_{-1} = -M
    QuadInt u2 = k.num();
    QuadInt u1(-M, 0, f);
    QuadInt p2(0, 0, f), p1(1, 0, f), q2(1, 0, f), q1(0, 0, f);
    ExpansionStatus status = ExpansionStatus::Running;
    for (std::size_t n = 0; n < max_terms; ++n) {
        // a_n = round(-U_{n-2}/U_{n-1}) = round(-U_{n-2} conj(U_{n-1}) / N(U_{n-1}))
        QuadInt x = -(u2 * u1.conj());
        QuadInt a = nearest_integer_frac(x.a(), x.b(), u1.norm(), f);
        QuadInt pn = a * p1 + p2;
        QuadInt qn = a * q1 + q2;
        QuadInt un = a * u1 + u2;
        if (diagnostics) {
            StepDiagnostics s;
            mpz_class nu = un.norm();
            s.abs_remainder = sqrt_ratio(nu, u1.norm());
            mpz_class m2 = M * M;
            s.approx_error = sqrt_ratio(qn.norm() * nu, m2);
            diag.push_back(s);
        }
        quot.push_back(a);
        ps.push_back(pn);
        qs.push_back(qn);
        p2 = std::move(p1);
        p1 = std::move(pn);
        q2 = std::move(q1);
        q1 = std::move(qn);
        u2 = std::move(u1);
        u1 = std::move(un);
        if (u1.is_zero()) {
            status = ExpansionStatus::TerminatedRational;
            break;
        }
    }
    return Expansion(z, std::move(quot), std::move(ps), std::move(qs), std::move(diag), status, 0);
}

}  // namespace

Expansion expand_exact(const KElement& z, std::size_t max_terms, bool diagnostics) {
    return expand_exact_impl(embed(z), z, max_terms, diagnostics);
}

Expansion expand(const RefinableComplex& z, std::size_t max_terms, const ExpandOptions& opts) {
    const FieldId f = z.field();
    f.require_euclidean();
    if (z.exact()) return expand_exact_impl(z, *z.exact(), max_terms, opts.diagnostics);

    const long cap = precision_cap();
    std::vector<QuadInt> quot, ps, qs;
    std::vector<StepDiagnostics> diag;
    auto p_at = [&](long n) { return n == -1 ? QuadInt(1, 0, f) : n == -2 ? QuadInt(0, 0, f) : ps[n]; };
    auto q_at = [&](long n) { return n == -1 ? QuadInt(0, 0, f) : n == -2 ? QuadInt(1, 0, f) : qs[n]; };

    BallState st;
    long bits = std::max(opts.start_bits, 16L);
    long high_water = 0;
    ExpansionStatus status = ExpansionStatus::Running;
    std::optional<Ball> u2, u1;
    // Raises the precision to at least `want` and rebuilds u_{n-2}, u_{n-1}.
    auto raise = [&](long n, long want) -> bool {
        while (true) {
            while (bits < want) bits *= 2;
            if (bits > cap) return false;
            if (st.init(z, bits)) break;
            want = bits * 2;
        }
        high_water = std::max(high_water, bits);
        u2 = st.u(q_at(n - 2), p_at(n - 2));
        u1 = st.u(q_at(n - 1), p_at(n - 1));
        return true;
    };
    if (!raise(0, bits)) {
        return Expansion(z, {}, {}, {}, {}, ExpansionStatus::PrecisionExhausted, high_water);
    }
    for (std::size_t n = 0; n < max_terms; ++n) {
        const long k = static_cast<long>(n);
        const long predicted = 2 * bits_of(q_at(k - 1)) + 64;
        if (predicted > bits && !raise(k, predicted)) {
            status = ExpansionStatus::PrecisionExhausted;
            break;
        }
        std::optional<QuadInt> a;
        while (true) {
            auto x = divide(-*u2, *u1);
            if (x) a = nearest_integer(*x, f);
            if (a) break;
            if (!raise(k, bits * 2)) break;
        }
        if (!a) {
            status = ExpansionStatus::PrecisionExhausted;
            break;
        }
        QuadInt pn = *a * p_at(k - 1) + p_at(k - 2);
        QuadInt qn = *a * q_at(k - 1) + q_at(k - 2);
        Ball un = st.u(qn, pn);
        if (opts.diagnostics) diag.push_back({abs_ratio(un, *u1), scaled_abs(qn, un)});
        quot.push_back(*a);
        ps.push_back(std::move(pn));
        qs.push_back(std::move(qn));
        u2 = std::move(u1);
        u1 = std::move(un);
    }
    return Expansion(z, std::move(quot), std::move(ps), std::move(qs), std::move(diag), status, high_water);
}

KElement convergent(const Expansion& e, std::size_t n) {
    if (n >= e.size()) throw IndexOutOfRange(n, e.size());
    const long k = static_cast<long>(n);
    return KElement(e.p(k)) / KElement(e.q(k));
}

namespace {

long working_bits(const Expansion& e, std::size_t n, long bits) {
    const long k = static_cast<long>(n);
    return bits + 2 * std::max(bits_of(e.q(k)), bits_of(e.p(k))) + 64;
}

}  // namespace

Ball approx_error(const Expansion& e, std::size_t n, long bits) {
    if (n >= e.size()) throw IndexOutOfRange(n, e.size());
    const long k = static_cast<long>(n);
    const long cap = precision_cap();
    for (long b = working_bits(e, n, bits); b <= cap; b *= 2) {
        BallState st;
        if (!st.init(e.z(), b)) continue;
        Ball u = st.u(e.q(k), e.p(k));
        auto root = sqrt(Ball::from_integer(e.q(k).norm(), st.z.prec()));
        return *root * u.abs();
    }
    throw PrecisionExhausted(cap, k);
}

RemainderView remainder(const Expansion& e, std::size_t n, long bits) {
    if (n >= e.size()) throw IndexOutOfRange(n, e.size());
    const long k = static_cast<long>(n);
    RemainderView view;
    view.n = n;
    if (const auto& exact = e.z().exact()) {
        KElement u = KElement(e.q(k)) * *exact - KElement(e.p(k));
        KElement v = KElement(e.q(k - 1)) * *exact - KElement(e.p(k - 1));
        KElement zn = -(u / v);
        view.z_n = ball_of(zn, bits);
        if (!zn.is_zero()) view.inv = ball_of(zn.inverse(), bits);
        return view;
    }
    const long cap = precision_cap();
    for (long b = working_bits(e, n, bits); b <= cap; b *= 2) {
        BallState st;
        if (!st.init(e.z(), b)) continue;
        Ball u = st.u(e.q(k), e.p(k));
        Ball v = st.u(e.q(k - 1), e.p(k - 1));
        auto zn = divide(-u, v);
        auto inv = divide(-v, u);
        if (!zn || !inv) continue;
        view.z_n = std::move(*zn);
        view.inv = std::move(*inv);
        return view;
    }
    throw PrecisionExhausted(cap, k);
}

std::vector<std::complex<double>> remainder_orbit(const Expansion& e) {
    std::vector<std::complex<double>> out;
    if (e.size() == 0) return out;
    out.reserve(e.size());
    if (e.z().is_exact()) {
        for (std::size_t n = 0; n < e.size(); ++n) {
            const Ball b = remainder(e, n, 64).z_n;
            out.emplace_back(b.re_double(), b.im_double());
        }
        return out;
    }
    const long cap = precision_cap();
    for (long b = working_bits(e, e.size() - 1, kStartPrecision); b <= cap; b *= 2) {
        BallState st;
        if (!st.init(e.z(), b)) continue;
        out.clear();
        Ball prev = st.u(e.q(-1), e.p(-1));
        bool ok = true;
        for (std::size_t n = 0; n < e.size(); ++n) {
            const long k = static_cast<long>(n);
            Ball u = st.u(e.q(k), e.p(k));
            auto zn = divide(-u, prev);
            if (!zn) {
                ok = false;
                break;
            }
            out.emplace_back(zn->re_double(), zn->im_double());
            prev = std::move(u);
        }
        if (ok) return out;
    }
    throw PrecisionExhausted(cap, static_cast<long>(e.size() - 1));
}

std::string bracket(const Expansion& e) {
    std::string s = "[";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i == 1) s += "; ";
        if (i > 1) s += ", ";
        s += e.quotients()[i].pretty();
    }
    return s + "]";
}

namespace {

nlohmann::json int_json(const mpz_class& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

std::string g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace

std::string to_json(const Expansion& e) {
    nlohmann::ordered_json j;
    j["d"] = e.field().d();
    j["z"] = e.z().expr().to_string();
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& a : e.quotients()) qs.push_back({int_json(a.a()), int_json(a.b())});
    j["quotients"] = qs;
    j["status"] = status_name(e.status());
    j["precision_high_water"] = e.precision_high_water();
    return j.dump() + "\n";
}

std::string diagnostics_csv(const Expansion& e) {
    std::ostringstream out;
    out << "n,a_n,abs_z_n,approx_error\n";
    const auto& dg = e.diagnostics();
    for (std::size_t i = 0; i < e.size(); ++i) {
        out << i << ',' << e.quotients()[i].to_string() << ',';
        if (i < dg.size()) out << g15(dg[i].abs_remainder) << ',' << g15(dg[i].approx_error);
        else out << ',';
        out << '\n';
    }
    return out.str();
}

}  // namespace nicf
