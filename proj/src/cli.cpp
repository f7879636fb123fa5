#include "nicf/cli.hpp"

#include "nicf/badapprox.hpp"
#include "nicf/cf.hpp"
#include "nicf/constants.hpp"
#include "nicf/errors.hpp"
#include "nicf/hermitian.hpp"
#include "nicf/realg.hpp"
#include "nicf/verify.hpp"
#include "nicf/voronoi.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>

namespace nicf {

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[md[k] >> 4];
        out += hex[md[k] & 15];
    }
    return out;
}

namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
public:
    using Error::Error;
};

FieldId euclidean_field(long d) {
    if (d != 1 && d != 2 && d != 3 && d != 7 && d != 11) throw UsageError("d must be 1,2,3,7,11");
    return FieldId(d);
}

std::string g15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

double r15(double x) { return std::strtod(g15(x).c_str(), nullptr); }

struct Run {
    std::vector<std::string> args;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::optional<std::uint64_t> seed;
    long high_water = 0;

    // Writes `content` to `path` with a sibling manifest, or to `out` when
    // path is empty.
    void emit(const std::string& path, const std::string& content, std::ostream& out) const {
        std::string text = content;
        if (text.empty() || text.back() != '\n') text += '\n';
        if (path.empty()) {
            out << text;
            return;
        }
        {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw UsageError("cannot write " + path);
            f << text;
        }
        json m;
        m["subcommand"] = args.empty() ? "" : args[0];
        m["args"] = args;
        if (seed) m["seed"] = *seed;
        else m["seed"] = nullptr;
        m["precision_high_water"] = high_water;
        m["precision_cap"] = precision_cap();
        m["wall_time_s"] = r15(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        m["artifacts"] = json::array({{{"path", path}, {"sha256", sha256_hex(text)}, {"bytes", text.size()}}});
        std::ofstream mf(path + ".manifest.json", std::ios::binary);
        if (!mf) throw UsageError("cannot write " + path + ".manifest.json");
        mf << m.dump(2) << '\n';
    }
};

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("expected a rational number", 0);
    q.canonicalize();
    return q;
}

KElement parse_element(const std::string& s, FieldId f) {
    const RefinableComplex rc = RefinableComplex::parse(s, f);
    if (!rc.exact()) throw UsageError("t must be an element of K");
    return *rc.exact();
}

std::complex<double> to_c(const KElement& k) {
    const FieldId f = k.field();
    const double a = k.coord_a().get_d(), b = k.coord_b().get_d();
    const double s = std::sqrt(static_cast<double>(f.d())) * (f.half_basis() ? 0.5 : 1.0);
    return {a + b * f.omega_trace() / 2.0, b * s};
}

std::complex<double> to_c(const QuadInt& q) { return to_c(KElement(q)); }

json point(std::complex<double> z) { return json::array({r15(z.real()), r15(z.imag())}); }

// Circle through three points, as {"center":[x,y],"radius":r}; a line when
// the points are collinear.
json circle_through(std::complex<double> a, std::complex<double> b, std::complex<double> c) {
    const std::complex<double> ab = b - a, ac = c - a;
    const double den = 2 * (ab.real() * ac.imag() - ab.imag() * ac.real());
    if (std::abs(den) < 1e-300) return json{{"line", json::array({point(a), point(c)})}};
    const double nb = std::norm(ab), nc = std::norm(ac);
    const std::complex<double> m(a.real() + (ac.imag() * nb - ab.imag() * nc) / den,
                                 a.imag() + (ab.real() * nc - ac.real() * nb) / den);
    return json{{"center", point(m)}, {"radius", r15(std::abs(a - m))}};
}

int cmd_expand(Run& run, const std::string& z, long d, std::size_t n, const std::string& format,
               const std::string& path, std::ostream& out, std::ostream& err) {
    const FieldId f = euclidean_field(d);
    const RefinableComplex rc = RefinableComplex::parse(z, f);
    const Expansion e = expand(rc, n);
    run.high_water = e.precision_high_water();
    out << bracket(e) << '\n' << "status: " << status_name(e.status()) << '\n';
    if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
    if (!path.empty()) run.emit(path, format == "csv" ? diagnostics_csv(e) : to_json(e), out);
    if (e.status() == ExpansionStatus::PrecisionExhausted) {
        err << "precision exhausted after " << e.size() << " terms; output is partial\n";
        return kExitPrecision;
    }
    return kExitOk;
}

int report_certificate(const Certificate& c, const std::optional<Expr>& z, Run& run, const std::string& path,
                       std::ostream& out, std::ostream& err) {
    std::string text = to_json(c);
    if (z) {
        json j = json::parse(text);
        j["z"] = z->to_string();
        text = j.dump();
    }
    run.emit(path, text, out);
    if (!c.anisotropic) {
        err << "isotropic form";
        if (c.witness) err << ": " << witness_string(c);
        err << '\n';
        return kExitNegative;
    }
    return kExitOk;
}

int cmd_certify(Run& run, long d, const std::string& form, const std::string& t, const std::string& n,
                const std::string& u, int sign, const std::string& path, std::ostream& out, std::ostream& err) {
    const FieldId f(d);
    if (!form.empty()) {
        const HermitianForm H = HermitianForm::parse(form, f);
        if (!H.is_indefinite()) throw UsageError("form is definite");
        return report_certificate(certify(H), std::nullopt, run, path, out, err);
    }
    if (n.empty() || u.empty()) throw UsageError("certify needs --form or --n and --u");
    const KElement tt = t.empty() ? KElement(f) : parse_element(t, f);
    const mpq_class nn = parse_rational(n);
    const Expr uu = parse_expr(u);
    if (nn <= 0) throw UsageError("n must be positive");
    if (is_norm(nn, f)) {
        err << "n = " << nn.get_str() << " is a norm from K";
        if (auto w = norm_witness(nn, f)) err << ": " << nn.get_str() << "=N(" << pretty_element(*w) << ")";
        err << '\n';
        return kExitNegative;
    }
    const Construction c = construct_badly_approximable(tt, nn, uu, sign, f);
    return report_certificate(c.certificate, c.expr, run, path, out, err);
}

std::string figure_orbit(const std::string& z, FieldId f, std::size_t n, Run& run) {
    const Expansion e = expand(RefinableComplex::parse(z, f), n, ExpandOptions{false, kStartPrecision});
    run.high_water = e.precision_high_water();
    std::string csv = "n,re,im\n";
    const auto orbit = remainder_orbit(e);
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        csv += std::to_string(k) + "," + g15(orbit[k].real()) + "," + g15(orbit[k].imag()) + "\n";
    }
    return csv;
}

std::string figure_arcs(const std::string& z, const std::string& form, FieldId f, std::size_t n, Run& run) {
    const HermitianForm H = HermitianForm::parse(form, f);
    const Expansion e = expand(RefinableComplex::parse(z, f), n, ExpandOptions{false, kStartPrecision});
    run.high_water = e.precision_high_water();
    return orbit_arcs_json(orbit(H, e, e.size()));
}

std::string figure_diag(const std::string& z, const std::string& form, FieldId f, std::size_t n, Run& run) {
    const HermitianForm H = HermitianForm::parse(form, f);
    const Certificate c = certify(H);
    if (!c.cprime) throw UsageError("diag needs an anisotropic form");
    const double cp = c.cprime->re_double();
    const Expansion e = expand(RefinableComplex::parse(z, f), n + 1, ExpandOptions{false, kStartPrecision});
    run.high_water = e.precision_high_water();
    if (e.size() <= n) throw UsageError("expansion shorter than the requested index");
    const long k = static_cast<long>(n);
    const QuadInt p = e.p(k), q = e.q(k), pp = e.p(k - 1), qp = e.q(k - 1);
    const QuadInt s = e.matrix(n).det();
    // g_n^-1 = det^-1 [[q_{n-1}, -p_{n-1}], [-q_n, p_n]]
    const Mat2 ginv{qp * s, -(pp * s), -(q * s), p * s};
    const ExteriorDisk ext = disk_image(ginv, p, q, mpq_class(cp));
    const auto g = [&](std::complex<double> x) {
        return (to_c(p) * x + to_c(pp)) / (to_c(q) * x + to_c(qp));
    };
    json j;
    j["d"] = f.d();
    j["n"] = n;
    j["cprime"] = r15(cp);
    j["p_over_q"] = point(to_c(KElement(p) / KElement(q)));
    j["minus_qprev_over_q"] = point(to_c(-(KElement(qp) / KElement(q))));
    j["exterior_circle"] = {{"center", point(to_c(ext.center))}, {"radius", r15(ext.radius.get_d())}};
    j["small_circle"] = {{"center", point(to_c(KElement(p) / KElement(q)))},
                         {"radius", r15(cp / q.norm().get_d())}};
    const double pi = std::acos(-1.0);
    j["unit_circle_image"] = circle_through(g({1, 0}), g(std::polar(1.0, 2 * pi / 3)), g(std::polar(1.0, 4 * pi / 3)));
    json walls = json::array(), images = json::array();
    const auto verts = cell_geometry(f, 64).vertices;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const std::complex<double> a(verts[i].re_double(), verts[i].im_double());
        const std::complex<double> b(verts[(i + 1) % verts.size()].re_double(), verts[(i + 1) % verts.size()].im_double());
        walls.push_back(json::array({point(a), point(b)}));
        images.push_back(circle_through(g(a), g((a + b) / 2.0), g(b)));
    }
    j["cell_walls"] = walls;
    j["cell_wall_images"] = images;
    return j.dump() + "\n";
}

int cmd_figure(Run& run, const std::string& name, long d, std::size_t n, bool n_set, const std::string& z,
               const std::string& form, std::size_t samples, const std::string& path, std::ostream& out,
               std::ostream& err) {
    const FieldId f = euclidean_field(d);
    if (name == "basediag") {
        run.emit(path, cell_geometry_json(f), out);
        return kExitOk;
    }
    if (name == "qratio") {
        if (!run.seed) throw UsageError("--seed is required for qratio");
        const SampleConfig cfg{f, samples, 0, *run.seed};
        const RatioDataset r = ratio_dataset(cfg, n_set ? n : 10);
        run.emit(path, ratio_csv(r, d), out);
        if (!r.report.ok()) {
            err << r.report.violations.size() << " ratio violations\n";
            return kExitNegative;
        }
        return kExitOk;
    }
    if (z.empty()) throw UsageError("--z is required for figure " + name);
    if (name == "orbit") {
        run.emit(path, figure_orbit(z, f, n_set ? n : 20000, run), out);
        return kExitOk;
    }
    if (form.empty()) throw UsageError("--form is required for figure " + name);
    if (name == "arcs") {
        run.emit(path, figure_arcs(z, form, f, n_set ? n : 10000, run), out);
        return kExitOk;
    }
    if (name == "diag") {
        run.emit(path, figure_diag(z, form, f, n_set ? n : 5, run), out);
        return kExitOk;
    }
    throw UsageError("unknown figure: " + name);
}

int cmd_verify(Run& run, const std::string& suite, long d, std::size_t samples, std::size_t terms, bool contextual,
               const std::string& path, std::ostream& out, std::ostream& err) {
    const FieldId f = euclidean_field(d);
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite: " + suite);
    const SampleConfig cfg{f, samples, terms, run.seed.value_or(1)};
    run.seed = cfg.seed;
    const auto reports = run_suite(suite, cfg, contextual);
    std::string text;
    bool ok = true;
    for (const auto& r : reports) {
        text += to_json(r);
        ok = ok && r.ok();
        if (!r.ok()) err << r.suite << ": " << r.violations.size() << " violations\n";
    }
    run.emit(path, text, out);
    return ok ? kExitOk : kExitNegative;
}

void constants_for(FieldId f, std::ostream& out) {
    const FieldConstants& c = constants(f);
    auto dec = [](const std::string& s) { return g15(std::strtod(s.c_str(), nullptr)); };
    out << "d = " << c.d << '\n';
    out << "rho = " << c.rho.expr().to_string() << " = " << g15(c.rho.ball(128).re_double()) << '\n';
    out << "alpha = " << c.alpha_expr << " = " << dec(c.alpha_decimal) << '\n';
    out << "kappa = " << c.kappa_expr << " = " << dec(c.kappa_decimal) << '\n';
    out << "lakein_inf = " << c.lakein_inf_expr << " = " << g15(1 / std::strtod(c.kappa_decimal.c_str(), nullptr))
        << '\n';
    out << "dirichlet_bound = rho/(1-rho) = " << dec(c.dirichlet_bound_decimal) << '\n';
    out << "dirichlet_optimal = " << c.dirichlet_optimal_expr << " = " << dec(c.dirichlet_optimal_decimal) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nearest-integer continued fractions over imaginary quadratic fields", "nicf"};
    app.require_subcommand(1);

    long d = 1;
    std::size_t n = 20;
    std::string z, format = "json", path, form, t, nstr, u, name, suite;
    int sign = 1;
    std::size_t samples = 0, terms = 20;
    std::uint64_t seed = 0;
    bool contextual = false;

    auto* ex = app.add_subcommand("expand", "Expand z and print [a0; a1, ...]");
    ex->add_option("z", z, "Expression for z")->required();
    ex->add_option("--d", d, "Field parameter");
    ex->add_option("--n", n, "Number of partial quotients");
    ex->add_option("--format", format, "File format: json or csv");
    ex->add_option("--out", path, "Output file");

    auto* ce = app.add_subcommand("certify", "Badly-approximable certificate for a form or (t, n, u)");
    ce->add_option("--d", d, "Field parameter");
    ce->add_option("--form", form, "Form [A, b0+b1*w, C]");
    ce->add_option("--t", t, "Circle center t in K");
    ce->add_option("--n", nstr, "Squared radius n (rational)");
    ce->add_option("--u", u, "Real algebraic u in (-2, 2)");
    ce->add_option("--sign", sign, "Sign choice for w (+1 or -1)");
    ce->add_option("--out", path, "Output file");

    auto* fi = app.add_subcommand("figure", "Emit figure data");
    fi->add_option("name", name, "basediag, qratio, orbit, arcs or diag")->required();
    fi->add_option("--d", d, "Field parameter");
    auto* fi_n = fi->add_option("--n", n, "Iterations, or max index for qratio");
    fi->add_option("--z", z, "Expression for z");
    fi->add_option("--form", form, "Form [A, b0+b1*w, C]");
    fi->add_option("--samples", samples, "Sample count")->default_val(5000);
    auto* fi_seed = fi->add_option("--seed", seed, "RNG seed");
    fi->add_option("--out", path, "Output file");

    auto* ve = app.add_subcommand("verify", "Run verification suites");
    ve->add_option("suite", suite, "mono, forbidden, ratio, kappa, invariants or all")->required();
    ve->add_option("--d", d, "Field parameter");
    ve->add_option("--samples", samples, "Sample count")->default_val(10000);
    ve->add_option("--terms", terms, "Terms per sample");
    auto* ve_seed = ve->add_option("--seed", seed, "RNG seed (default 1)");
    ve->add_flag("--contextual", contextual, "Extend the second d=11 three-term table by its trailing w");
    ve->add_option("--out", path, "Output file");

    auto* co = app.add_subcommand("constants", "Print the per-field constants");
    auto* co_d = co->add_option("--d", d, "Field parameter (all fields when omitted)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    Run run;
    run.args = args;
    try {
        if (*ex) return cmd_expand(run, z, d, n, format, path, out, err);
        if (*ce) return cmd_certify(run, d, form, t, nstr, u, sign, path, out, err);
        if (*fi) {
            if (fi_seed->count()) run.seed = seed;
            return cmd_figure(run, name, d, n, fi_n->count() > 0, z, form, samples, path, out, err);
        }
        if (*ve) {
            if (ve_seed->count()) run.seed = seed;
            return cmd_verify(run, suite, d, samples, terms, contextual, path, out, err);
        }
        if (*co) {
            if (co_d->count()) {
                constants_for(euclidean_field(d), out);
            } else {
                for (long k : {1L, 2L, 3L, 7L, 11L}) {
                    constants_for(FieldId(k), out);
                    if (k != 11) out << '\n';
                }
            }
            return kExitOk;
        }
    } catch (const PrecisionExhausted& e) {
        err << e.what() << '\n';
        return kExitPrecision;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run_cli(args, out, err);
}

}  // namespace nicf
