#ifndef POINCARE_CLI_HPP
#define POINCARE_CLI_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <poincare/asymptotics.hpp>
#include <poincare/boettcher_green.hpp>
#include <poincare/harmonic_measure.hpp>
#include <poincare/poincare_series.hpp>
#include <poincare/poly_core.hpp>
#include <poincare/rational.hpp>
#include <poincare/zeros_zeta.hpp>

namespace poincare::cli
{

using json = nlohmann::ordered_json;

inline constexpr const char *schema_version = "1.0";
inline const std::vector<std::string> commands = {"analyze", "series", "eval",   "measure", "fourier",
                                                  "zeros",   "zeta",   "bridge", "all"};

struct RunConfig
{
    std::string command;
    std::string poly;                // "c_d,...,c_1", constant term 0
    std::vector<Rational> coeffs;    // ascending, c_0 = 0
    std::string fixed_point = "auto";
    int order = default_order;
    std::size_t atoms = 100000;
    std::uint64_t seed = 1;
    std::string out;
    double tol = 1e-9;
    int measure_depth = 10;
    double zero_bound = 1e5;
    double zeta_bound = 1e7;
    double bridge_x = 1e3;
};

struct RunReport
{
    json report;
    std::map<std::string, std::string> files; // name -> contents
    int exit_code = 0;
};

// descending coefficients of z^d .. z^1
inline std::vector<Rational> parse_poly(const std::string &text)
{
    std::vector<Rational> desc;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        desc.push_back(parse_rational(item));
    }
    if (!text.empty() && text.back() == ',') {
        throw ConfigError("trailing comma in --poly");
    }
    if (desc.size() < 2) {
        throw ConfigError("--poly needs at least two coefficients (degree >= 2)");
    }
    if (desc.front() == 0) {
        throw ConfigError("leading coefficient is zero");
    }
    std::vector<Rational> asc{Rational(0)};
    asc.insert(asc.end(), desc.rbegin(), desc.rend());
    return asc;
}

inline void validate(RunConfig &c)
{
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) {
        throw ConfigError("unknown command '" + c.command + "'");
    }
    c.coeffs = parse_poly(c.poly);
    if (c.order < 4 || c.order > 512) {
        throw ConfigError("--order must be in [4, 512]");
    }
    if (c.atoms < 100 || c.atoms > (std::size_t(1) << 26)) {
        throw ConfigError("--atoms must be in [100, 2^26]");
    }
    if (!(c.tol > 0.0) || c.tol >= 1.0) {
        throw ConfigError("--tol must be in (0, 1)");
    }
    if (c.fixed_point != "auto") {
        parse_rational(c.fixed_point);
    }
}

namespace detail
{

inline std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json cj(cplx z)
{
    return json{{"re", z.real()}, {"im", z.imag()}};
}

inline json rj(const Rational &q)
{
    return to_string(q);
}

inline json poly_json(const ExactPolynomial &p)
{
    json a = json::array();
    for (const auto &c : p.coefficients()) {
        a.push_back(rj(c));
    }
    return a;
}

inline json estimate_json(const Estimate &e)
{
    return json{{"value", e.value}, {"stderr", e.stderr_}};
}

inline json complex_estimate_json(const ComplexEstimate &e)
{
    return json{{"value", cj(e.value)}, {"stderr", e.stderr_}};
}

struct Context
{
    const RunConfig &cfg;
    NormalizedSystem sys;
    std::optional<Pipeline> pl;
    std::optional<MeasureSample> sample;
    std::optional<ZeroList> zeros;

    const Pipeline &pipeline()
    {
        if (!pl) {
            pl.emplace(sys, cfg.order);
        }
        return *pl;
    }

    const MeasureSample &measure()
    {
        if (!sample) {
            sample = backward_orbit_sample(sys, cfg.measure_depth, cfg.atoms, cfg.seed);
        }
        return *sample;
    }
};

inline json system_json(const NormalizedSystem &sys)
{
    json j;
    j["input"] = poly_json(sys.original);
    j["normalized"] = poly_json(sys.exact_poly);
    j["exact"] = sys.exact();
    j["d"] = sys.d;
    j["lambda"] = sys.lambda;
    j["rho"] = sys.rho;
    j["conjugation"] = {{"scale", sys.conjugation.scale},
                        {"shift", sys.conjugation.shift},
                        {"scale_exact", sys.conjugation.exact ? rj(sys.conjugation.scale_exact) : json()},
                        {"shift_exact", sys.conjugation.exact ? rj(sys.conjugation.shift_exact) : json()}};
    return j;
}

inline json stage_analyze(Context &ctx, json &warnings)
{
    const auto &sys = ctx.sys;
    json j;
    json fps = json::array();
    for (const auto &fp : fixed_points(sys.original)) {
        fps.push_back({{"location", cj(fp.location)},
                       {"multiplier", cj(fp.multiplier)},
                       {"class", to_string(fp.cls)},
                       {"superattracting_order", fp.superattract_order}});
    }
    j["fixed_points"] = fps;
    const auto geo = real_julia_interval(sys);
    json g{{"kind", to_string(geo.kind)}};
    if (geo.hull) {
        g["hull"] = {geo.hull->first, geo.hull->second};
    }
    if (geo.endpoints) {
        g["endpoints"] = geo.endpoints->pattern;
    }
    if (geo.circle_center) {
        g["circle_center"] = cj(*geo.circle_center);
        g["circle_radius"] = geo.circle_radius;
    }
    if (!geo.note.empty()) {
        g["note"] = geo.note;
    }
    j["julia"] = g;
    j["exceptional"] = to_string(classify_exceptional(sys));
    const auto ah = ahlfors_check(sys);
    j["ahlfors"] = {{"attracting", ah.attracting}, {"gamma", ah.gamma}, {"bound", ah.bound}, {"holds", ah.holds}};
    try {
        const auto au = audit_multipliers(sys);
        json es = json::array();
        for (const auto &e : au.entries) {
            es.push_back({{"location", e.location},
                          {"abs_multiplier", e.abs_multiplier},
                          {"position", e.position},
                          {"bound", e.bound},
                          {"verdict", e.verdict},
                          {"chebyshev_flag", e.chebyshev_flag}});
        }
        j["multiplier_audit"] = {{"entries", es},
                                 {"any_violation", au.any_violation},
                                 {"any_equality", au.any_equality}};
    } catch (const NotApplicable &e) {
        j["multiplier_audit"] = {{"status", "not-applicable"}, {"reason", e.what()}};
        warnings.push_back(std::string("multiplier audit: ") + e.what());
    }
    return j;
}

inline json stage_series(Context &ctx, json &)
{
    const auto &pl = ctx.pipeline();
    const auto &s = pl.series;
    json j;
    j["order"] = s.order;
    j["exact_order"] = s.exact_order;
    j["degraded"] = s.degraded;
    j["r_conv"] = s.r_conv;
    json ex = json::array();
    for (std::size_t n = 0; n < s.exact.size() && n <= 20; ++n) {
        ex.push_back(rj(s.exact[n]));
    }
    j["exact_prefix"] = ex;
    j["coeffs"] = s.coeffs;
    json b = json::array(), bi = json::array();
    for (std::size_t n = 0; n < pl.boettcher.exact.size() && n < 8; ++n) {
        b.push_back(rj(pl.boettcher.exact[n]));
    }
    for (std::size_t n = 0; n < pl.boettcher_inverse.exact.size() && n < 8; ++n) {
        bi.push_back(rj(pl.boettcher_inverse.exact[n]));
    }
    j["boettcher"] = b;
    j["boettcher_inverse"] = bi;
    j["escape_radius"] = escape_radius(ctx.sys.poly);
    return j;
}

inline json stage_eval(Context &ctx, json &warnings)
{
    const auto &pl = ctx.pipeline();
    const auto oracle = closed_form_oracle(ctx.sys);
    const std::vector<cplx> pts = {0.5, 1.0, 2.0, 5.0, 10.0, -10.0, {0.0, 3.0}, {-2.0, 2.0}};
    json a = json::array();
    double worst = 0.0;
    for (const cplx &z : pts) {
        json e{{"z", cj(z)}};
        try {
            const auto r = evaluate(ctx.sys, pl.series, z, ctx.cfg.tol);
            e["f"] = cj(r.value);
            e["lift_depth"] = r.lift_depth;
            e["residual"] = r.residual;
            e["warning"] = r.warning;
            worst = std::max(worst, r.residual / std::max(1.0, std::abs(ctx.sys.poly(r.value))));
            if (oracle) {
                const cplx ex = (*oracle)(z);
                e["closed_form_rel_error"] = std::abs(r.value - ex) / std::max(1e-300, std::abs(ex));
            }
        } catch (const OverflowError &ex) {
            e["error"] = ex.what();
            warnings.push_back(std::string("eval: ") + ex.what());
        }
        a.push_back(e);
    }
    json j;
    j["points"] = a;
    j["max_relative_residual"] = worst;
    j["closed_form"] = oracle.has_value();
    // linearizers at finite attracting fixed points of the user's polynomial
    json lin = json::array();
    const auto &orig = ctx.sys.original;
    const auto real_orig = to_real(orig);
    for (const auto &fp : fixed_points(orig)) {
        if (fp.cls != FixedPointClass::attracting && fp.cls != FixedPointClass::superattracting) {
            continue;
        }
        json e{{"w0", cj(fp.location)}, {"class", to_string(fp.cls)}};
        try {
            double worst_l = 0.0;
            if (fp.cls == FixedPointClass::attracting) {
                const auto k = koenigs_psi(orig, fp.location);
                for (int i = 0; i < 32; ++i) {
                    const cplx z = fp.location + std::polar(0.05, 2.0 * std::numbers::pi * i / 32);
                    worst_l = std::max(worst_l, std::abs(k.eta * k(z) - k(real_orig(z))));
                }
                e["kind"] = "koenigs";
                e["eta"] = cj(k.eta);
            } else {
                const auto g = finite_boettcher(orig, fp.location);
                for (int i = 0; i < 32; ++i) {
                    const cplx z = fp.location + std::polar(0.05, 2.0 * std::numbers::pi * i / 32);
                    worst_l = std::max(worst_l, std::abs(g(real_orig(z)) - g.A * std::pow(g(z), g.k)));
                }
                e["kind"] = "finite-boettcher";
                e["k"] = g.k;
                e["A"] = cj(g.A);
            }
            e["residual"] = worst_l;
        } catch (const error &ex) {
            e["error"] = ex.kind();
            e["message"] = ex.what();
        }
        lin.push_back(e);
    }
    j["linearizers"] = lin;
    return j;
}

inline json stage_measure(Context &ctx, json &, std::map<std::string, std::string> &files)
{
    const auto &sys = ctx.sys;
    const auto &m = ctx.measure();
    json j;
    j["mode"] = to_string(m.mode);
    j["atoms"] = m.size();
    j["depth"] = m.depth;
    j["burn_in"] = burn_in_steps;
    j["seed"] = m.seed;
    j["start"] = cj(m.start);
    json mom = json::array();
    for (double s : {1.0, 2.0}) {
        const auto r = mellin_mu(sys, m, s);
        mom.push_back({{"s", s}, {"M", cj(r.M)}, {"stderr", r.stderr_M}});
    }
    j["moments"] = mom;
    j["invariance_defect_s1"] = complex_estimate_json(
        invariance_defect(sys, m, [](cplx x) { return neg_pow(x, cplx(1.0)); }));
    const auto geo = real_julia_interval(sys);
    if (geo.kind == JuliaKind::interval && geo.hull) {
        j["arcsine_ks"] = arcsine_ks(m, geo.hull->first, geo.hull->second);
    }
    j["ball_mass"] = json::array();
    for (double t : {0.1, 0.01}) {
        j["ball_mass"].push_back({{"t", t}, {"mass", estimate_json(ball_mass(m, t))}});
    }
    const std::size_t cap = std::min<std::size_t>(m.size(), 100000);
    j["csv_atoms"] = cap;
    std::string csv = "x_re,x_im\n";
    for (std::size_t i = 0; i < cap; ++i) {
        csv += num(m.atoms[i].real()) + "," + num(m.atoms[i].imag()) + "\n";
    }
    files["measure.csv"] = csv;
    return j;
}

inline json table_json(const FourierTable &t)
{
    json a = json::array();
    for (const auto &e : t.entries) {
        a.push_back({{"k", e.k},
                     {"f", cj(e.f)},
                     {"uncertainty", e.uncertainty},
                     {"source", e.source},
                     {"low_confidence", e.low_confidence}});
    }
    return a;
}

inline json stage_fourier(Context &ctx, json &warnings, std::map<std::string, std::string> &files)
{
    const auto &pl = ctx.pipeline();
    const auto &sys = ctx.sys;
    auto prof = extract_F(pl, 0.0, 3, 64);
    prof.noise_floor = noise_floor(prof, sys.d);
    const auto verdict = classify_constancy(prof, sys);
    json j;
    j["profile"] = {{"periods", prof.periods},
                    {"samples_per_period", prof.samples_per_period},
                    {"r_start", prof.r_start},
                    {"oscillation", prof.oscillation},
                    {"noise_floor", prof.noise_floor},
                    {"periodicity_defect", prof.periodicity_defect},
                    {"positive", prof.positive}};
    j["constancy"] = {{"verdict", to_string(verdict.verdict)},
                      {"algebraic", to_string(verdict.algebraic)},
                      {"consistent", verdict.consistent}};
    if (!verdict.consistent) {
        warnings.push_back("fourier: numerical verdict disagrees with the algebraic class");
    }
    const auto fft = fourier_coeffs(prof, 3);
    j["fft"] = table_json(fft);
    j["alias_bound"] = fft.alias_bound;
    // residue route on the full preimage tree within the budget
    int depth = 0;
    while (std::pow(static_cast<double>(sys.d), depth + 1) <= static_cast<double>(tree_budget)) {
        ++depth;
    }
    const auto tree = full_preimage_tree(sys, depth);
    const auto res = residue_fourier_table(sys, tree, 3);
    j["residue"] = table_json(res);
    j["residue_tree_depth"] = depth;
    json agree = json::array();
    for (int k = -3; k <= 3; ++k) {
        const auto &a = fft.at(k);
        const auto &b = res.at(k);
        const double comb = a.uncertainty + b.uncertainty;
        agree.push_back({{"k", k},
                         {"abs_diff", std::abs(a.f - b.f)},
                         {"combined_uncertainty", comb},
                         {"within_3x", std::abs(a.f - b.f) <= 3.0 * comb}});
    }
    j["agreement"] = agree;
    std::string csv = "u,re_F,im_F\n";
    for (std::size_t i = 0; i < prof.u.size(); ++i) {
        csv += num(prof.u[i]) + "," + num(prof.F[i].real()) + "," + num(prof.F[i].imag()) + "\n";
    }
    files["profile_F.csv"] = csv;
    return j;
}

inline json zero_list_json(const ZeroList &zl)
{
    json j;
    j["method"] = zl.method;
    j["X"] = zl.X;
    j["count"] = zl.zeros.size();
    j["univalence_radius"] = zl.univalence_radius;
    j["self_similar"] = zl.self_similar;
    j["self_similar_misses"] = zl.self_similar_misses;
    j["max_residual"] = zl.max_residual;
    j["gaps"] = zl.gaps.size();
    return j;
}

inline json stage_zeros(Context &ctx, json &, std::map<std::string, std::string> &files)
{
    const auto &pl = ctx.pipeline();
    const auto zl = find_real_zeros(ctx.sys, pl.series, ctx.cfg.zero_bound);
    json j = zero_list_json(zl);
    json first = json::array();
    for (std::size_t i = 0; i < zl.zeros.size() && i < 20; ++i) {
        first.push_back({{"x", cj(zl.zeros[i].x)},
                         {"multiplicity", zl.zeros[i].multiplicity},
                         {"residual", zl.zeros[i].residual}});
    }
    j["first"] = first;
    long mult = 0;
    for (const auto &z : zl.zeros) {
        mult += z.multiplicity;
    }
    j["count_with_multiplicity"] = mult;
    const auto bis = bisect_real_zeros(ctx.sys, pl.series, std::min(ctx.cfg.zero_bound, 1e4));
    std::size_t matched = 0;
    for (const auto &b : bis.zeros) {
        for (const auto &z : zl.zeros) {
            if (std::abs(b.xi - z.xi) <= 1e-8 * z.xi) {
                ++matched;
                break;
            }
        }
    }
    j["bisection"] = {{"X", bis.X}, {"sign_changes", bis.zeros.size()}, {"matched", matched}, {"gaps", bis.gaps.size()}};
    const auto prof = zero_counting(ctx.sys, zl, 2, 64);
    j["counting"] = {{"periods", 2}, {"oscillation", prof.oscillation}, {"mean", prof.mean}};
    std::string zc = "x_re,x_im\n";
    for (const auto &z : zl.zeros) {
        zc += num(z.x.real()) + "," + num(z.x.imag()) + "\n";
    }
    files["zeros.csv"] = zc;
    std::string cc = "x,N_f\n";
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        cc += num(prof.x[i]) + "," + std::to_string(prof.N[i]) + "\n";
    }
    files["counting.csv"] = cc;
    ctx.zeros = zl;
    return j;
}

inline json zeta_json(const ZetaReport &z)
{
    return json{{"s", cj(z.s)},
                {"value", cj(z.value)},
                {"partial", cj(z.partial)},
                {"tail_estimate", cj(z.tail_estimate)},
                {"tail_bound", z.tail_bound},
                {"X", z.X},
                {"terms", z.terms},
                {"multiplicity", z.multiplicity},
                {"C_max", z.C_max},
                {"fit_window", {z.fit_window.first, z.fit_window.second}}};
}

inline json stage_zeta(Context &ctx, json &)
{
    const auto &pl = ctx.pipeline();
    const auto &sys = ctx.sys;
    const auto zl = find_real_zeros(sys, pl.series, ctx.cfg.zeta_bound);
    json j;
    j["zeros"] = zero_list_json(zl);
    const auto h = hadamard_data(sys, pl.series);
    json e = json::array();
    for (std::size_t i = 0; i < h.e.size(); ++i) {
        e.push_back(h.exact ? rj(h.e_exact[i]) : json(h.e[i]));
    }
    j["hadamard"] = {{"k", h.k}, {"e", e}, {"exact", h.exact}};
    j["sigma"] = 1.0 / std::log(sys.lambda);
    json vals = json::array();
    for (double s : {1.0, 2.0}) {
        if (s > sys.rho) {
            vals.push_back(zeta_json(zeta(sys, zl, s, pl.series)));
        }
    }
    j["values"] = vals;
    const double s_mid = 0.5 * (sys.rho + h.k + 1.0);
    const auto mi = mellin_identity_check(pl, zl, {cplx(s_mid)});
    j["mellin_identity"] = {{"s", s_mid},
                            {"lhs", cj(mi.points[0].lhs)},
                            {"rhs", cj(mi.points[0].rhs)},
                            {"defect", mi.max_defect}};
    return j;
}

inline json stage_bridge(Context &ctx, json &)
{
    const auto &pl = ctx.pipeline();
    const auto &sys = ctx.sys;
    const double x = ctx.cfg.bridge_x;
    ZeroList zl = ctx.zeros && ctx.zeros->X >= x ? *ctx.zeros : find_real_zeros(sys, pl.series, x);
    const auto b = counting_measure_bridge(sys, pl.series, zl, ctx.measure(), x);
    json j{{"x", b.x},
           {"n", b.n},
           {"t", b.t},
           {"mass", estimate_json(b.mass)},
           {"value", b.value},
           {"sigma", b.sigma},
           {"value_next", b.value_next},
           {"sigma_next", b.sigma_next},
           {"count_distinct", b.count_distinct},
           {"count_multiplicity", b.count_multiplicity},
           {"count_preimages", b.count_preimages},
           {"exact_tree", b.exact_tree},
           {"z_score", b.z_score},
           {"z_next", b.z_next},
           {"stable", b.stable},
           {"match", b.match}};
    return j;
}

inline std::vector<std::string> stages_for(const std::string &command)
{
    if (command == "all") {
        return {"analyze", "series", "eval", "measure", "fourier", "zeros", "zeta", "bridge"};
    }
    return {command};
}

} // namespace detail

inline json config_json(const RunConfig &c)
{
    json cf = json::array();
    for (std::size_t i = c.coeffs.size(); i-- > 1;) {
        cf.push_back(to_string(c.coeffs[i]));
    }
    return json{{"command", c.command},
                {"poly", cf},
                {"fixed_point", c.fixed_point},
                {"order", c.order},
                {"atoms", c.atoms},
                {"seed", c.seed},
                {"tol", c.tol},
                {"measure_depth", c.measure_depth},
                {"zero_bound", c.zero_bound},
                {"zeta_bound", c.zeta_bound},
                {"bridge_x", c.bridge_x}};
}

// Config errors propagate as ConfigError/NormalizationError (exit 2); stage
// errors are recorded in the report.
inline RunReport run(RunConfig cfg)
{
    validate(cfg);
    const ExactPolynomial p(cfg.coeffs);
    NormalizedSystem sys = cfg.fixed_point == "auto"
                               ? normalize(p)
                               : normalize(p, cplx(to_double(parse_rational(cfg.fixed_point))));
    RunReport out;
    json &r = out.report;
    r["schema_version"] = schema_version;
    r["tool"] = "poincare-lab";
    r["config"] = config_json(cfg);
    r["system"] = detail::system_json(sys);
    json warnings = json::array();
    json stages = json::object();
    detail::Context ctx{cfg, sys, std::nullopt, std::nullopt, std::nullopt};
    for (const auto &name : detail::stages_for(cfg.command)) {
        json st;
        try {
            json body;
            if (name == "analyze") {
                body = detail::stage_analyze(ctx, warnings);
            } else if (name == "series") {
                body = detail::stage_series(ctx, warnings);
            } else if (name == "eval") {
                body = detail::stage_eval(ctx, warnings);
            } else if (name == "measure") {
                body = detail::stage_measure(ctx, warnings, out.files);
            } else if (name == "fourier") {
                body = detail::stage_fourier(ctx, warnings, out.files);
            } else if (name == "zeros") {
                body = detail::stage_zeros(ctx, warnings, out.files);
            } else if (name == "zeta") {
                body = detail::stage_zeta(ctx, warnings);
            } else if (name == "bridge") {
                body = detail::stage_bridge(ctx, warnings);
            }
            st["status"] = "ok";
            st["result"] = body;
        } catch (const NotApplicable &e) {
            st["status"] = "not-applicable";
            st["reason"] = e.what();
            warnings.push_back(name + ": " + e.what());
        } catch (const error &e) {
            st["status"] = "failed";
            st["error"] = e.kind();
            st["reason"] = e.what();
            out.exit_code = 1;
        } catch (const std::exception &e) {
            st["status"] = "failed";
            st["error"] = "exception";
            st["reason"] = e.what();
            out.exit_code = 1;
        }
        stages[name] = st;
    }
    r["stages"] = stages;
    r["warnings"] = warnings;
    r["status"] = out.exit_code == 0 ? "ok" : "failed";
    return out;
}

inline void write_outputs(const RunReport &rep, const std::filesystem::path &dir)
{
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "report.json", std::ios::binary);
        f << rep.report.dump(2) << "\n";
    }
    for (const auto &[name, body] : rep.files) {
        std::ofstream f(dir / name, std::ios::binary);
        f << body;
    }
}

} // namespace poincare::cli

#endif
