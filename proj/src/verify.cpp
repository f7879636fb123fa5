#include "nicf/verify.hpp"

#include "nicf/constants.hpp"
#include "nicf/errors.hpp"
#include "nicf/voronoi.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

namespace nicf {

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double to15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

double decimal(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t t = index ^ 0xD1B54A32D192ED03ULL;
    state_ = splitmix(s) ^ splitmix(t);
}

std::uint64_t SampleRng::next() { return splitmix(state_); }

mpz_class SampleRng::uniform(const mpz_class& lo, const mpz_class& hi) {
    const mpz_class range = hi - lo + 1;
    const std::size_t words = mpz_sizeinbase(range.get_mpz_t(), 2) / 64 + 2;
    mpz_class r = 0;
    for (std::size_t k = 0; k < words; ++k) {
        r <<= 64;
        const std::uint64_t w = next();
        r += mpz_class(static_cast<unsigned long>(w >> 32)) * mpz_class(1UL << 32) +
             mpz_class(static_cast<unsigned long>(w & 0xFFFFFFFFULL));
    }
    return lo + r % range;
}

KElement sample_point(const SampleConfig& cfg, std::size_t index) {
    const FieldId f = cfg.field;
    f.require_euclidean();
    SampleRng rng(cfg.seed, index);
    const mpz_class den = mpz_class(1) << kSampleBits;
    // im = b * sqrt(d) (or b * sqrt(d)/2); |im| <= rho bounds the cell
    const double s = std::sqrt(static_cast<double>(f.d())) * (f.half_basis() ? 0.5 : 1.0);
    const double rho_d = rho(f).ball(64).re_double();
    mpz_class bmax(std::ldexp(rho_d / s, 53));
    bmax <<= kSampleBits - 53;
    const mpz_class half = den / 2;
    for (;;) {
        const mpz_class B = rng.uniform(-bmax, bmax);
        mpz_class shift = 0;
        if (f.half_basis()) mpz_fdiv_q_2exp(shift.get_mpz_t(), B.get_mpz_t(), 1);
        const mpz_class A = rng.uniform(-half - shift, half - shift);
        KElement z(QuadInt(A, B, f), den);
        if (nearest_integer(z).is_zero()) return z;
    }
}

std::string to_json(const ScanReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["d"] = r.d;
    j["samples"] = r.samples;
    j["terms"] = r.terms;
    j["seed"] = r.seed;
    j["expansions"] = r.expansions;
    j["terms_total"] = r.terms_total;
    j["passed"] = r.ok();
    j["violation_count"] = r.violations.size();
    auto& v = j["violations"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < r.violations.size() && k < 100; ++k) {
        const auto& x = r.violations[k];
        v.push_back({{"sample", x.sample}, {"n", x.n}, {"detail", x.detail}});
    }
    auto& st = j["stats"] = nlohmann::ordered_json::object();
    for (const auto& [k, x] : r.stats) st[k] = to15(x);
    return j.dump(2) + "\n";
}

std::vector<std::size_t> monotonicity_violations(const std::vector<QuadInt>& q) {
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n < q.size(); ++n) {
        if (q[n - 1].norm() >= q[n].norm()) out.push_back(n);
    }
    return out;
}

std::vector<std::size_t> monotonicity_violations(const Expansion& e) {
    std::vector<QuadInt> q;
    q.reserve(e.size());
    for (std::size_t n = 0; n < e.size(); ++n) q.push_back(e.q(static_cast<long>(n)));
    return monotonicity_violations(q);
}

namespace {

std::vector<QuadInt> units(FieldId f) {
    std::vector<QuadInt> out;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            QuadInt u(a, b, f);
            if (u.norm() == 1) out.push_back(u);
        }
    return out;
}

struct TupleLess {
    bool operator()(const std::vector<QuadInt>& x, const std::vector<QuadInt>& y) const {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), QuadIntLess{});
    }
};

}  // namespace

ForbiddenTable ForbiddenTable::closure() const {
    std::set<std::vector<QuadInt>, TupleLess> seen;
    ForbiddenTable out{field, {}};
    for (const auto& t : tuples) {
        for (const auto& u : units(field)) {
            for (bool swap : {false, true}) {
                for (bool conj : {false, true}) {
                    std::vector<QuadInt> v;
                    for (std::size_t k = 0; k < t.size(); ++k) {
                        const QuadInt& m = ((k % 2 == 0) != swap) ? u : u.conj();
                        QuadInt x = m * t[k];
                        v.push_back(conj ? x.conj() : x);
                    }
                    if (seen.insert(v).second) out.tuples.push_back(std::move(v));
                }
            }
        }
    }
    return out;
}

ForbiddenTable forbidden_table(FieldId field, bool contextual) {
    const QuadInt w = QuadInt::omega(field);
    const QuadInt one(1, 0, field);
    ForbiddenTable t{field, {}};
    if (field.d() == 7) {
        t.tuples = {{w - one - one, w}, {w - one, w}, {w, w}};
    } else if (field.d() == 11) {
        const QuadInt w1 = w - one, w2 = w - one - one, wp = w + one;
        t.tuples = {{w1, w1, w}, {w, w1, w}, {wp, w1, w}, {w2, w1, w},
                    {w1, w, w2}, {w, w, w2, w}, {wp, w, w2, w, w}};
        if (contextual) t.tuples[3].push_back(w);
    } else {
        throw DomainError("forbidden tables exist for d = 7 and d = 11 only");
    }
    return t;
}

std::vector<std::pair<std::size_t, std::size_t>> find_tuples(const std::vector<QuadInt>& a,
                                                             const ForbiddenTable& table) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < table.tuples.size(); ++k) {
            const auto& t = table.tuples[k];
            if (i + t.size() > a.size()) continue;
            if (std::equal(t.begin(), t.end(), a.begin() + static_cast<long>(i))) out.emplace_back(i, k);
        }
    }
    return out;
}

namespace {

std::string tuple_string(const std::vector<QuadInt>& t) {
    std::string s = "(";
    for (std::size_t k = 0; k < t.size(); ++k) s += (k ? ", " : "") + t[k].pretty();
    return s + ")";
}

enum Suite : unsigned { kMono = 1, kForbidden = 2, kRatio = 4, kKappa = 8, kInvariants = 16 };

struct Driver {
    SampleConfig cfg;
    unsigned suites = 0;
    std::size_t ratio_max_n = 10;
    ForbiddenTable table;

    ScanReport mono, forbidden, ratio, kappa, invariants;
    std::vector<RatioPoint> points;

    ScanReport blank(const char* name) const {
        ScanReport r;
        r.suite = name;
        r.d = cfg.field.d();
        r.samples = cfg.samples;
        r.terms = cfg.terms;
        r.seed = cfg.seed;
        return r;
    }

    void run() {
        mono = blank("mono");
        forbidden = blank("forbidden");
        ratio = blank("ratio");
        kappa = blank("kappa");
        invariants = blank("invariants");
        const FieldId f = cfg.field;
        const bool two_step = f.d() == 1 || f.d() == 3;
        const double kappa_d = decimal(constants(f).kappa_decimal);
        const double rho_d = rho(f).ball(64).re_double();
        double min_mono = std::numeric_limits<double>::infinity();
        double max_ratio = 0, min_two = std::numeric_limits<double>::infinity();
        double max_err = 0, max_rem = 0;
        std::size_t occurrences = 0;
        const bool diag = (suites & (kKappa | kInvariants)) != 0;

        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const KElement z = sample_point(cfg, i);
            const Expansion e = expand_exact(z, cfg.terms, diag);
            const std::size_t len = e.size();
            std::vector<QuadInt> q;
            std::vector<mpz_class> nq;
            q.reserve(len);
            nq.reserve(len);
            for (std::size_t n = 0; n < len; ++n) {
                q.push_back(e.q(static_cast<long>(n)));
                nq.push_back(q.back().norm());
            }
            for (ScanReport* r : {&mono, &forbidden, &ratio, &kappa, &invariants}) {
                r->expansions += 1;
                r->terms_total += len;
            }

            if (suites & kMono) {
                for (std::size_t n = 1; n < len; ++n) {
                    min_mono = std::min(min_mono, mpq_class(nq[n], nq[n - 1]).get_d());
                    if (nq[n - 1] >= nq[n]) {
                        mono.violations.push_back(
                            {i, n, "N(q_{n-1})=" + nq[n - 1].get_str() + " N(q_n)=" + nq[n].get_str() +
                                       " z=" + z.to_string() + " expansion=" + bracket(e)});
                    }
                }
            }
            if (suites & kForbidden) {
                for (const auto& [at, k] : find_tuples(e.quotients(), table)) {
                    ++occurrences;
                    forbidden.violations.push_back({i, at, tuple_string(table.tuples[k]) + " z=" + z.to_string()});
                }
            }
            if (suites & kRatio) {
                for (std::size_t n = 1; n <= ratio_max_n && n < len; ++n) {
                    const KElement r = KElement(q[n - 1]) / KElement(q[n]);
                    const double s = f.half_basis() ? 0.5 : 1.0;
                    const double ra = r.coord_a().get_d(), rb = r.coord_b().get_d();
                    points.push_back({n, ra + rb * f.omega_trace() / 2.0,
                                      rb * std::sqrt(static_cast<double>(f.d())) * s, i});
                    max_ratio = std::max(max_ratio, std::sqrt(mpq_class(nq[n - 1], nq[n]).get_d()));
                    if (nq[n - 1] >= nq[n]) {
                        ratio.violations.push_back({i, n, "|q_{n-1}/q_n| >= 1"});
                    }
                }
                if (two_step) {
                    for (std::size_t n = 0; n + 2 <= ratio_max_n && n + 2 < len; ++n) {
                        min_two = std::min(min_two, std::sqrt(mpq_class(nq[n + 2], nq[n]).get_d()));
                        if (4 * nq[n + 2] < 9 * nq[n]) {
                            ratio.violations.push_back({i, n, "|q_{n+2}/q_n| < 3/2 z=" + z.to_string()});
                        }
                    }
                }
            }
            if (diag) {
                const auto& dg = e.diagnostics();
                for (std::size_t n = 0; n < dg.size(); ++n) {
                    if (suites & kKappa) {
                        max_err = std::max(max_err, dg[n].approx_error);
                        if (dg[n].approx_error > kappa_d + kKappaSlack) {
                            kappa.violations.push_back(
                                {i, n, "approx_error=" + std::to_string(dg[n].approx_error) + " z=" + z.to_string()});
                        }
                    }
                    if (suites & kInvariants) {
                        max_rem = std::max(max_rem, dg[n].abs_remainder);
                        if (dg[n].abs_remainder > rho_d + 1e-12) {
                            invariants.violations.push_back({i, n, "|z_n| > rho"});
                        }
                    }
                }
            }
            if (suites & kInvariants) {
                for (std::size_t n = 0; n < len; ++n) {
                    const QuadInt det = e.matrix(n).det();
                    const long sign = n % 2 == 0 ? -1 : 1;
                    if (!(det == QuadInt(sign, 0, f))) invariants.violations.push_back({i, n, "det g_n != (-1)^(n+1)"});
                    if (n >= 1 && e.quotient(n).norm() <= 1) invariants.violations.push_back({i, n, "N(a_n) <= 1"});
                }
            }
        }
        mono.stats["min_norm_ratio"] = min_mono;
        forbidden.stats["occurrences"] = static_cast<double>(occurrences);
        forbidden.stats["tuples"] = static_cast<double>(table.tuples.size());
        ratio.stats["max_abs_ratio"] = max_ratio;
        ratio.stats["points"] = static_cast<double>(points.size());
        if (two_step) ratio.stats["min_two_step_ratio"] = min_two;
        kappa.stats["max_approx_error"] = max_err;
        kappa.stats["kappa"] = kappa_d;
        invariants.stats["max_abs_remainder"] = max_rem;
        invariants.stats["rho"] = rho_d;
    }
};

Driver make_driver(const SampleConfig& cfg, unsigned suites) {
    cfg.field.require_euclidean();
    Driver d;
    d.cfg = cfg;
    d.suites = suites;
    d.table = ForbiddenTable{cfg.field, {}};
    return d;
}

}  // namespace

ScanReport check_monotonicity(const SampleConfig& cfg) {
    Driver d = make_driver(cfg, kMono);
    d.run();
    return d.mono;
}

ScanReport forbidden_scan(const SampleConfig& cfg, const ForbiddenTable& table) {
    if (!(table.field == cfg.field)) throw FieldMismatch();
    Driver d = make_driver(cfg, kForbidden);
    d.table = table.closure();
    d.run();
    return d.forbidden;
}

RatioDataset ratio_dataset(const SampleConfig& cfg, std::size_t max_n) {
    SampleConfig c = cfg;
    c.terms = max_n + 1;
    Driver d = make_driver(c, kRatio);
    d.ratio_max_n = max_n;
    d.run();
    return RatioDataset{std::move(d.points), std::move(d.ratio)};
}

std::string ratio_csv(const RatioDataset& r, long d) {
    std::string out = "n,re,im,d,sample_index\n";
    char buf[160];
    for (const auto& p : r.points) {
        std::snprintf(buf, sizeof buf, "%zu,%.15g,%.15g,%ld,%zu\n", p.n, p.re, p.im, d, p.sample);
        out += buf;
    }
    return out;
}

ScanReport kappa_envelope(const SampleConfig& cfg) {
    Driver d = make_driver(cfg, kKappa);
    d.run();
    return d.kappa;
}

ScanReport invariants_scan(const SampleConfig& cfg) {
    Driver d = make_driver(cfg, kInvariants);
    d.run();
    return d.invariants;
}

std::vector<std::string> suite_names() { return {"mono", "forbidden", "ratio", "kappa", "invariants", "all"}; }

std::vector<ScanReport> run_suite(const std::string& name, const SampleConfig& cfg, bool contextual) {
    const long dd = cfg.field.d();
    const bool has_table = dd == 7 || dd == 11;
    unsigned s = 0;
    if (name == "mono") s = kMono;
    else if (name == "forbidden") s = kForbidden;
    else if (name == "ratio") s = kRatio;
    else if (name == "kappa") s = kKappa;
    else if (name == "invariants") s = kInvariants;
    else if (name == "all") s = kMono | (has_table ? kForbidden : 0u) | kRatio | kKappa | kInvariants;
    else throw DomainError("unknown suite: " + name);
    if ((s & kForbidden) && !has_table) throw DomainError("forbidden tables exist for d = 7 and d = 11 only");
    Driver d = make_driver(cfg, s);
    if (s & kForbidden) d.table = forbidden_table(cfg.field, contextual).closure();
    d.ratio_max_n = std::min<std::size_t>(10, cfg.terms == 0 ? 0 : cfg.terms - 1);
    d.run();
    std::vector<ScanReport> out;
    if (s & kMono) out.push_back(d.mono);
    if (s & kForbidden) out.push_back(d.forbidden);
    if (s & kRatio) out.push_back(d.ratio);
    if (s & kKappa) out.push_back(d.kappa);
    if (s & kInvariants) out.push_back(d.invariants);
    return out;
}

}  // namespace nicf
