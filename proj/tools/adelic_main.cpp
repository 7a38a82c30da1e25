#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adelic/cli.hpp"

using adelic::ConfigError;
using adelic::json;
using adelic::RunConfig;

namespace {

constexpr int kExitIdentity = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

// A spec argument is a file path, or inline JSON when it starts with '{' or '['.
json load_spec(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("inline JSON: ") + e.what());
        }
    }
    return adelic::read_json_file(arg);
}

// Surface divisors may omit q when --q is given.
json with_q(json spec, long q) {
    if (q == 0) return spec;
    if (spec.is_array()) return json{{"q", q}, {"divisor", spec}};
    if (!spec.is_object()) throw ConfigError("surface divisor must be an object or list");
    if (!spec.contains("q")) {
        spec["q"] = q;
    } else if (spec["q"] != q) {
        throw ConfigError("--q " + std::to_string(q) + " conflicts with q = " + spec["q"].dump() + " in the divisor file");
    }
    return spec;
}

// "surface index" -> "surface-index", "verify all" -> "verify-all", etc.
std::vector<std::string> normalize_args(int argc, char** argv) {
    std::vector<std::string> a(argv + 1, argv + argc);
    if (a.size() >= 2) {
        const std::string joined = a[0] + "-" + a[1];
        std::string merged;
        if (joined == "surface-index" || joined == "surface-chi" || joined == "verify-all") merged = joined;
        if (joined == "verify-residue-duality") merged = "residue-verify";
        if (!merged.empty()) {
            a.erase(a.begin(), a.begin() + 2);
            a.insert(a.begin(), merged);
        }
    }
    std::reverse(a.begin(), a.end());  // CLI11 consumes the vector from the back
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adelic cohomology sizes, duality and intersection checks over global fields and P^2/F_q"};
    app.require_subcommand(1);

    std::string field_arg, divisor_arg, divisor_b_arg, window_arg, config_path, output_path;
    std::string format = "json", units = "logq";
    double tol = 1e-12;
    int precision = 0;
    std::uint64_t seed = 20240601;
    long q = 0, window = 4, samples = 200;
    std::vector<int> criteria;
    bool timing = false;

    auto common = [&](CLI::App* s) {
        s->add_option("--tol", tol, "Tolerance for numeric identities and theta truncation")->capture_default_str();
        s->add_option("--precision", precision, "Working precision in bits (53..64; default from ADELIC_PRECISION or 64)");
        s->add_option("--seed", seed, "PRNG seed, echoed in the report")->capture_default_str();
        s->add_option("--format,--out", format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
        s->add_option("--units", units, "Table rendering of exact values: logq or nat")->check(CLI::IsMember({"logq", "nat"}));
        s->add_option("--output,-o", output_path, "Write the report here instead of stdout");
        s->add_flag("--timing", timing, "Print elapsed wall time to stderr");
    };

    auto* rr = app.add_subcommand("rr1d", "h0, h1, chi and the Riemann-Roch / duality defects of a replete divisor");
    auto* th = app.add_subcommand("theta", "Theta sum over the ideal lattice of a number-field divisor");
    auto* rv = app.add_subcommand("residue-verify", "Residue reciprocity and orthogonality in a truncation window");
    auto* si = app.add_subcommand("surface-index", "Intersection index of two divisors on P^2/F_q");
    auto* sc = app.add_subcommand("surface-chi", "chi, h-numbers and 2D duality / Riemann-Roch defects on P^2/F_q");
    auto* va = app.add_subcommand("verify-all", "Run the acceptance suite");
    auto* rn = app.add_subcommand("run", "Run a JSON config (or a previous report's \"input\" block)");
    for (auto* s : {rr, th, rv, si, sc, va, rn}) common(s);

    for (auto* s : {rr, th}) {
        s->add_option("--field", field_arg, "Field spec file or inline JSON")->required();
        s->add_option("--divisor", divisor_arg, "Divisor spec file or inline JSON");
    }
    rv->add_option("--field", field_arg, "Field spec file or inline JSON");
    rv->add_option("--q", q, "Shorthand for the field F_q(t)");
    rv->add_option("--divisor", divisor_arg, "D' spec file or inline JSON");
    rv->add_option("--window-spec", window_arg, "Window file: {places, lower, upper, divisor?}");
    rv->add_option("--window", window, "Default window bounds [-n, n]")->capture_default_str();
    rv->add_option("--samples", samples, "Random functions for the reciprocity check")->capture_default_str();
    si->add_option("--q", q, "Field size (may instead be given in the divisor files)");
    si->add_option("--divisor-a,--divisor", divisor_arg, "First divisor file")->required();
    si->add_option("--divisor-b", divisor_b_arg, "Second divisor file")->required();
    sc->add_option("--q", q, "Field size (may instead be given in the divisor file)");
    sc->add_option("--divisor", divisor_arg, "Divisor file")->required();
    va->add_option("--criteria", criteria, "Subset of criteria (1..9)");
    rn->add_option("--config", config_path, "Config file")->required();

    try {
        app.parse(normalize_args(argc, argv));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    RunConfig cfg;
    adelic::Report rep;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (rn->parsed()) {
            cfg = RunConfig::from_json(adelic::read_json_file(config_path));
            // flags given explicitly on the command line override the file
            if (rn->count("--format")) cfg.format = format;
            if (rn->count("--units")) cfg.units = units;
        } else {
            cfg.precision = precision ? precision : adelic::default_precision();
            cfg.tol = tol;
            cfg.seed = seed;
            cfg.format = format;
            cfg.units = units;
            if (rr->parsed() || th->parsed()) {
                cfg.command = rr->parsed() ? "rr1d" : "theta";
                cfg.field = load_spec(field_arg);
                if (!divisor_arg.empty()) cfg.divisor = load_spec(divisor_arg);
            } else if (rv->parsed()) {
                cfg.command = "residue-verify";
                if (!field_arg.empty() && q != 0) throw ConfigError("give either --field or --q, not both");
                cfg.field = q != 0 ? json{{"kind", "function_field"}, {"q", q}} : load_spec(field_arg);
                if (!divisor_arg.empty()) cfg.divisor = load_spec(divisor_arg);
                if (!window_arg.empty()) cfg.window_spec = load_spec(window_arg);
                cfg.window = window;
                cfg.samples = samples;
            } else if (si->parsed()) {
                cfg.command = "surface-index";
                cfg.divisor = with_q(load_spec(divisor_arg), q);
                cfg.divisor_b = with_q(load_spec(divisor_b_arg), q);
            } else if (sc->parsed()) {
                cfg.command = "surface-chi";
                cfg.divisor = with_q(load_spec(divisor_arg), q);
            } else {
                cfg.command = "verify-all";
                cfg.criteria = criteria;
            }
            adelic::validate(cfg);
        }
        rep = adelic::run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitDomain;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string text = cfg.format == "table" ? adelic::render_table(rep.body) : rep.body.dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        if (!out) {
            std::cerr << "error: cannot write " << output_path << "\n";
            return kExitConfig;
        }
        out << text;
    }
    if (timing) std::cerr << "elapsed " << secs << " s\n";
    return rep.all_pass ? 0 : kExitIdentity;
}
