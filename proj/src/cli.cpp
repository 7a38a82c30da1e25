#include "adelic/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "adelic/field_core.hpp"
#include "adelic/ideal_lattice.hpp"
#include "adelic/residue_duality.hpp"
#include "adelic/rr1d.hpp"
#include "adelic/surface_geom.hpp"
#include "adelic/verification.hpp"

namespace adelic {

namespace {

const std::set<std::string> kCommands{"rr1d", "theta", "residue-verify", "surface-index", "surface-chi", "verify-all"};

template <class T>
T get_as(const json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: '") + what + "' has the wrong type: " + j.dump());
    }
}

long get_long(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ConfigError(std::string("config: '") + what + "' must be an integer, got " + j.dump());
    return j.get<long>();
}

// ---- field and divisor specs ----

GlobalField parse_field(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("field spec must be an object with a \"kind\" key");
    const auto kind = get_as<std::string>(j["kind"], "field.kind");
    if (kind == "rational") return GlobalField::rational();
    if (kind == "function_field") {
        if (!j.contains("q")) throw ConfigError("function_field spec needs \"q\"");
        const long q = get_long(j["q"], "field.q");
        if (q < 2) throw ConfigError("function_field: q must be a prime power >= 2");
        return GlobalField::function_field(static_cast<std::uint64_t>(q));
    }
    if (kind == "number_field") {
        if (!j.contains("min_poly") || !j["min_poly"].is_array()) throw ConfigError("number_field spec needs \"min_poly\" (coefficients, constant term first)");
        ZPoly f;
        for (const auto& c : j["min_poly"]) f.emplace_back(get_long(c, "field.min_poly[]"));
        const bool assume = j.contains("assume_irreducible") && get_as<bool>(j["assume_irreducible"], "field.assume_irreducible");
        return GlobalField::number_field(f, assume);
    }
    throw ConfigError("unknown field kind '" + kind + "' (rational, number_field, function_field)");
}

gf_elem parse_gf(const GaloisField& k, const json& c) {
    const long v = get_long(c, "coefficient");
    if (v < 0) return k.from_int(v);
    if (static_cast<std::uint64_t>(v) >= k.size()) throw ConfigError("coefficient " + std::to_string(v) + " is not an element index below q");
    return k.element(static_cast<std::uint64_t>(v));
}

Place parse_place(const GlobalField& K, const json& p) {
    if (p.is_string()) {
        const auto s = p.get<std::string>();
        if (s == "inf" || s == "infinity") return InfinitePlace{};
        throw ConfigError("unknown place '" + s + "'");
    }
    if (!p.is_object()) throw ConfigError("place must be \"inf\" or an object, got " + p.dump());
    if (p.contains("poly")) {
        if (!K.is_function_field()) throw ConfigError("poly places need a function field");
        FqPoly f;
        for (const auto& c : p["poly"]) f.push_back(parse_gf(K.ff().constants(), c));
        return K.ff().place(f);
    }
    if (p.contains("prime")) {
        if (!K.is_number_field()) throw ConfigError("prime places need a number field");
        const long prime = get_long(p["prime"], "place.prime");
        const long idx = p.contains("index") ? get_long(p["index"], "place.index") : 0;
        auto above = K.nf().places_above(prime);
        if (idx < 0 || static_cast<std::size_t>(idx) >= above.size())
            throw ConfigError("place index " + std::to_string(idx) + " out of range: " + std::to_string(above.size()) + " place(s) above " + std::to_string(prime));
        return above[static_cast<std::size_t>(idx)];
    }
    if (p.contains("real")) return RealPlace{static_cast<int>(get_long(p["real"], "place.real"))};
    if (p.contains("complex")) return ComplexPlace{static_cast<int>(get_long(p["complex"], "place.complex"))};
    throw ConfigError("unrecognised place " + p.dump());
}

RepleteDivisor parse_divisor(const GlobalField& K, const json& j) {
    const json& list = j.is_object() && j.contains("divisor") ? j["divisor"] : j;
    RepleteDivisor D;
    if (list.is_null()) return D;
    if (!list.is_array()) throw ConfigError("divisor must be a list of {place, coeff}");
    for (const auto& e : list) {
        if (!e.is_object() || !e.contains("place") || !e.contains("coeff")) throw ConfigError("divisor entry needs \"place\" and \"coeff\": " + e.dump());
        const Place v = parse_place(K, e["place"]);
        K.check_place(v);
        if (is_archimedean(v)) {
            D.arch[v] += get_as<double>(e["coeff"], "coeff");
        } else {
            D.finite[v] += get_long(e["coeff"], "coeff");
        }
    }
    D.normalize();
    return D;
}

struct SurfaceInput {
    std::uint64_t q;
    PlaneDivisor D;
};

SurfaceInput parse_surface(const json& j, const char* what) {
    if (!j.is_object() || !j.contains("q") || !j.contains("divisor"))
        throw ConfigError(std::string(what) + ": surface divisor needs {\"q\": ..., \"divisor\": [{\"form\": ..., \"coeff\": ...}]}");
    const long q = get_long(j["q"], "q");
    if (q < 2) throw ConfigError("q must be a prime power >= 2");
    SurfaceInput s{static_cast<std::uint64_t>(q), {}};
    ProjectivePlane P(s.q);
    for (const auto& e : j["divisor"]) {
        if (!e.is_object() || !e.contains("form") || !e.contains("coeff")) throw ConfigError("surface divisor entry needs \"form\" and \"coeff\": " + e.dump());
        auto f = P.parse(get_as<std::string>(e["form"], "form"));
        if (e.contains("asserted_irreducible")) f.asserted_irreducible = get_as<bool>(e["asserted_irreducible"], "asserted_irreducible");
        s.D += get_long(e["coeff"], "coeff") * single_curve(f);
    }
    return s;
}

// ---- report helpers ----

json exact_logq(long units, std::uint64_t q) {
    return {{"value_logq", units}, {"value", static_cast<double>(units) * std::log(static_cast<double>(q))}};
}

struct Defects {
    json entries = json::object();
    bool all = true;

    void exact(const std::string& name, long value) {
        const bool ok = value == 0;
        entries[name] = {{"value", value}, {"exact", true}, {"tolerance", 0}, {"pass", ok}};
        all &= ok;
    }
    void bounded(const std::string& name, double value, double tol) {
        const bool ok = std::fabs(value) < tol;
        entries[name] = {{"value", value}, {"exact", false}, {"tolerance", tol}, {"pass", ok}};
        all &= ok;
    }
};

constexpr double kThetaIdentityTol = 1e-9;

json rr1d_report(const RunConfig& c, Defects& d) {
    const auto K = parse_field(c.field);
    const auto D = parse_divisor(K, c.divisor);
    json r;
    if (K.is_function_field()) {
        const auto q = K.q();
        const long h0v = h0_ff(K, D);
        const long h1q = h1_ff_quotient(K, D);
        const long h1d = h1_ff_duality(K, D);
        const long chi = h0v - h1q;
        const long chi0 = chi_ff(K, {});
        const long deg = degree(K, D);
        r["h0"] = exact_logq(h0v, q);
        r["h1"] = exact_logq(h1q, q);
        r["h1_by_duality"] = exact_logq(h1d, q);
        r["chi"] = exact_logq(chi, q);
        r["degree"] = deg;
        r["genus"] = K.genus();
        d.exact("rr_defect", (chi - chi0) - deg);
        d.exact("duality_defect", h1q - h1d);
        d.exact("chi_formula_defect", chi - chi_formula_ff(K, D));
    } else {
        ThetaParams tp;
        tp.tol = c.tol;
        const double h0v = theta_h0(K, D, tp);
        const double h1v = h1_by_duality(K, D, tp);
        r["h0"] = h0v;
        r["h1"] = h1v;
        r["chi"] = h0v - h1v;
        r["chi_formula"] = chi_formula(K, D);
        r["log_module"] = log_module(K, D);
        r["log_abs_k"] = log_abs_k(K);
        d.bounded("rr_defect", rr_identity_defect(K, D, tp), kThetaIdentityTol);
        d.bounded("theta_duality_defect", theta_duality_defect(K, D, tp), kThetaIdentityTol);
    }
    return r;
}

json theta_report(const RunConfig& c, Defects& d) {
    const auto K = parse_field(c.field);
    if (!K.is_number_field()) throw std::invalid_argument("theta: needs a number field (use rr1d for function fields)");
    const auto D = parse_divisor(K, c.divisor);
    ThetaParams tp;
    tp.tol = c.tol;
    const auto L = ideal_lattice(K, D);
    const auto t = theta_sum(L.embedding, tp);
    json r;
    r["h0"] = static_cast<double>(t.log_sum);
    r["sum"] = static_cast<double>(t.sum);
    r["points"] = t.points;
    r["radius_sq"] = static_cast<double>(t.radius_sq);
    r["tail_bound"] = static_cast<double>(t.tail_bound);
    r["shells"] = t.shells;
    r["rank"] = L.embedding.size();
    d.bounded("relative_tail", static_cast<double>(t.tail_bound / t.sum), c.tol * (1 + 1e-9));
    return r;
}

json residue_report(const RunConfig& c, Defects& d) {
    const auto K = parse_field(c.field);
    if (!K.is_function_field()) throw std::invalid_argument("residue-verify: needs a function field");
    const json& ws = c.window_spec;
    if (!ws.is_null() && !ws.is_object()) throw ConfigError("window spec must be an object");
    const auto Dp = parse_divisor(K, !ws.is_null() && ws.contains("divisor") ? ws["divisor"] : c.divisor);
    if (!Dp.arch.empty()) throw std::invalid_argument("residue-verify: archimedean coefficients on a function field");
    const auto& ff = K.ff();
    const auto& k = ff.constants();

    std::mt19937_64 rng(c.seed);
    long failures = 0;
    for (long i = 0; i < c.samples; ++i)
        if (residue_sum_defect(K, ff.random(rng, 4)) != k.zero()) ++failures;

    std::set<Place> places;
    long lo = -c.window, hi = c.window;
    if (!ws.is_null() && ws.contains("places")) {
        for (const auto& p : ws["places"]) places.insert(parse_place(K, p));
    } else {
        places = {ff.place({k.zero(), k.one()}), InfinitePlace{}};
        for (const auto& [v, n] : Dp.finite) places.insert(v);
    }
    if (!ws.is_null() && ws.contains("lower")) lo = get_long(ws["lower"], "window_spec.lower");
    if (!ws.is_null() && ws.contains("upper")) hi = get_long(ws["upper"], "window_spec.upper");
    if (lo > hi) throw ConfigError("window_spec: lower exceeds upper");
    const auto W = make_window(std::vector<Place>(places.begin(), places.end()), lo, hi);
    const auto p = perp_in_window(K, W, Dp);
    const auto cc = h1_character_count(K, Dp);
    const long h1q = h1_ff_quotient(K, Dp);

    json r;
    r["residue_samples"] = c.samples;
    r["residue_sum_failures"] = failures;
    json wp = json::array();
    for (const auto& v : W.places) wp.push_back(K.describe(v));
    r["window"] = {{"places", wp}, {"lower", lo}, {"upper", hi}};
    r["perp"] = {{"dim_v", p.dim_v},         {"dim_v_dual", p.dim_v_dual},         {"dim_image", p.dim_image},
                 {"dim_perp", p.dim_perp},   {"dim_expected", p.dim_expected},     {"pairing_rank", p.pairing_rank},
                 {"nondegenerate", p.nondegenerate}, {"perp_match", p.perp_match}, {"double_perp_match", p.double_perp_match}};
    r["h1_character_count"] = {{"count", cc.count}, {"log_q", cc.log_q}, {"enumerated", cc.enumerated}};
    r["h1_by_quotient"] = exact_logq(h1q, K.q());
    d.exact("residue_sum_failures", failures);
    d.exact("nondegeneracy", p.nondegenerate ? 0 : 1);
    d.exact("perp_mismatch", p.perp_match ? 0 : 1);
    d.exact("double_perp_mismatch", p.double_perp_match ? 0 : 1);
    d.exact("dimension_defect", p.dim_image + p.dim_perp - p.dim_v);
    d.exact("h1_count_defect", cc.log_q - h1q);
    return r;
}

json surface_index_report(const RunConfig& c, Defects& d) {
    const auto A = parse_surface(c.divisor, "divisor-a");
    const auto B = parse_surface(c.divisor_b, "divisor-b");
    if (A.q != B.q) throw ConfigError("surface-index: the two divisors are over different fields");
    ProjectivePlane P(A.q, c.seed);
    P.validate(A.D);
    P.validate(B.D);
    const long ab = P.index(A.D, B.D), ba = P.index(B.D, A.D);
    json r;
    r["index"] = exact_logq(ab, A.q);
    r["degree_a"] = A.D.degree();
    r["degree_b"] = B.D.degree();
    r["divisor_a"] = P.to_string(A.D);
    r["divisor_b"] = P.to_string(B.D);
    d.exact("symmetry_defect", ab - ba);
    d.exact("classical_defect", ab - A.D.degree() * B.D.degree());
    return r;
}

json surface_chi_report(const RunConfig& c, Defects& d, json& warnings) {
    const auto S = parse_surface(c.divisor, "divisor");
    ProjectivePlane P(S.q, c.seed);
    P.validate(S.D);
    for (const auto& [f, n] : S.D.terms)
        if (!P.is_smooth(f))
            warnings.push_back("form " + P.to_string(f) + " is singular; its arithmetic genus " + std::to_string(f.arithmetic_genus()) + " is used");
    const long chi = P.chi_inductive(S.D);
    long spread = 0;
    std::mt19937_64 rng(c.seed);
    for (int i = 0; i < 10; ++i) spread = std::max(spread, std::abs(P.chi_inductive(S.D, rng() | 1) - chi));
    const auto h = P.h_numbers_geometric(S.D);
    const long deg = S.D.degree();
    json r;
    r["divisor"] = P.to_string(S.D);
    r["degree"] = deg;
    r["chi_relative"] = exact_logq(chi, S.q);
    r["h0"] = exact_logq(h.h0, S.q);
    r["h1"] = exact_logq(h.h1, S.q);
    r["h2"] = exact_logq(h.h2, S.q);
    r["chi"] = exact_logq(h.chi, S.q);
    r["log_c_star"] = exact_logq(h.log_c_star, S.q);
    r["n1"] = h.n1;
    d.exact("duality_defect_2d", P.duality_defect_2d(S.D));
    d.exact("rr2d_defect", P.rr2d_defect(S.D));
    d.exact("peel_order_spread", spread);
    d.exact("classical_chi_defect", chi - deg * (deg + 3) / 2);
    return r;
}

json verify_report(const RunConfig& c, Defects& d) {
    SuiteOptions o;
    o.seed = c.seed;
    json r = json::array();
    for (const auto& res : run_suite(c.criteria, o)) {
        r.push_back({{"id", res.id},
                     {"name", res.name},
                     {"pass", res.pass},
                     {"correct", res.correct},
                     {"within_budget", res.within_budget},
                     {"cases", res.cases},
                     {"detail", res.detail}});
        d.exact("criterion_" + std::to_string(res.id), res.pass ? 0 : 1);
    }
    return {{"criteria", r}};
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows, bool logq) {
    if (j.is_object() && j.contains("value_logq")) {
        rows.emplace_back(prefix, logq ? j["value_logq"].dump() + " log q" : j["value"].dump());
    } else if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows, logq);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows, logq);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

}  // namespace

json RunConfig::to_json() const {
    json j;
    j["command"] = command;
    j["field"] = field;
    j["divisor"] = divisor;
    j["divisor_b"] = divisor_b;
    j["tol"] = tol;
    j["precision"] = precision;
    j["seed"] = seed;
    j["format"] = format;
    j["units"] = units;
    j["window_spec"] = window_spec;
    j["window"] = window;
    j["samples"] = samples;
    j["criteria"] = criteria;
    return j;
}

RunConfig RunConfig::from_json(const json& in) {
    const json& j = in.is_object() && in.contains("input") && in["input"].is_object() ? in["input"] : in;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{"command", "field", "divisor", "divisor_b", "tol", "precision", "seed", "format", "units", "window_spec", "window", "samples", "criteria"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");
    RunConfig c;
    c.precision = default_precision();
    if (j.contains("command")) c.command = get_as<std::string>(j["command"], "command");
    if (j.contains("field")) c.field = j["field"];
    if (j.contains("divisor")) c.divisor = j["divisor"];
    if (j.contains("divisor_b")) c.divisor_b = j["divisor_b"];
    if (j.contains("tol")) c.tol = get_as<double>(j["tol"], "tol");
    if (j.contains("precision")) c.precision = static_cast<int>(get_long(j["precision"], "precision"));
    if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j["seed"], "seed");
    if (j.contains("format")) c.format = get_as<std::string>(j["format"], "format");
    if (j.contains("units")) c.units = get_as<std::string>(j["units"], "units");
    if (j.contains("window_spec")) c.window_spec = j["window_spec"];
    if (j.contains("window")) c.window = get_long(j["window"], "window");
    if (j.contains("samples")) c.samples = get_long(j["samples"], "samples");
    if (j.contains("criteria")) c.criteria = get_as<std::vector<int>>(j["criteria"], "criteria");
    validate(c);
    return c;
}

int default_precision() {
    const char* env = std::getenv("ADELIC_PRECISION");
    if (env == nullptr || *env == '\0') return 64;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0') throw ConfigError(std::string("ADELIC_PRECISION is not an integer: ") + env);
    if (v < 53 || v > 64) throw ConfigError("ADELIC_PRECISION must lie in [53, 64] (long double mantissa), got " + std::to_string(v));
    return static_cast<int>(v);
}

void validate(const RunConfig& c) {
    if (!kCommands.count(c.command)) throw ConfigError("unknown command '" + c.command + "'");
    if (!(c.tol > 0) || !(c.tol < 1)) throw ConfigError("tol must lie in (0, 1)");
    if (c.precision < 53 || c.precision > 64) throw ConfigError("precision must lie in [53, 64] bits (long double mantissa)");
    if (c.format != "json" && c.format != "table") throw ConfigError("format must be json or table");
    if (c.units != "logq" && c.units != "nat") throw ConfigError("units must be logq or nat");
    if (c.window < 0 || c.window > 64) throw ConfigError("window must lie in [0, 64]");
    if (c.samples < 0) throw ConfigError("samples must be non-negative");
    for (int id : c.criteria)
        if (id < 1 || id > kCriteria) throw ConfigError("no acceptance criterion " + std::to_string(id));
    const bool needs_field = c.command == "rr1d" || c.command == "theta" || c.command == "residue-verify";
    if (needs_field && c.field.is_null()) throw ConfigError(c.command + " needs a field spec");
    if ((c.command == "surface-index" || c.command == "surface-chi") && c.divisor.is_null()) throw ConfigError(c.command + " needs a divisor");
    if (c.command == "surface-index" && c.divisor_b.is_null()) throw ConfigError("surface-index needs a second divisor");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

Report run(const RunConfig& config) {
    validate(config);
    Defects d;
    json warnings = json::array();
    json results;
    if (config.command == "rr1d")
        results = rr1d_report(config, d);
    else if (config.command == "theta")
        results = theta_report(config, d);
    else if (config.command == "residue-verify")
        results = residue_report(config, d);
    else if (config.command == "surface-index")
        results = surface_index_report(config, d);
    else if (config.command == "surface-chi")
        results = surface_chi_report(config, d, warnings);
    else
        results = verify_report(config, d);
    Report rep;
    rep.all_pass = d.all;
    rep.body = {{"command", config.command}, {"input", config.to_json()}, {"seed", config.seed}, {"results", results},
                {"defects", d.entries},      {"pass", d.all},              {"warnings", warnings}};
    return rep;
}

std::string render_table(const json& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("command", report.value("command", ""));
    rows.emplace_back("seed", report.contains("seed") ? report["seed"].dump() : "");
    const bool logq = !(report.contains("input") && report["input"].value("units", "logq") == "nat");
    if (report.contains("results")) flatten(report["results"], "", rows, logq);
    if (report.contains("defects"))
        for (const auto& [name, e] : report["defects"].items())
            rows.emplace_back("defect " + name, e["value"].dump() + (e["pass"].get<bool>() ? "  ok" : "  FAIL"));
    if (report.contains("warnings"))
        for (const auto& w : report["warnings"]) rows.emplace_back("warning", w.get<std::string>());
    rows.emplace_back("pass", report.contains("pass") ? report["pass"].dump() : "");
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    std::string out;
    for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    return out;
}

}  // namespace adelic
