#include "adelic/verification.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "adelic/field_core.hpp"
#include "adelic/residue_duality.hpp"
#include "adelic/rr1d.hpp"
#include "adelic/surface_geom.hpp"

namespace adelic {

namespace {

struct Tally {
    long cases = 0, failures = 0;
    double worst = 0;
    std::string first_failure;

    void exact(bool ok, const std::string& what) {
        ++cases;
        if (!ok) fail(what);
    }
    void bounded(double defect, double tol, const std::string& what) {
        ++cases;
        const double a = std::fabs(defect);
        if (!(a <= worst)) worst = a;  // also catches NaN
        if (!(a < tol)) fail(what + " (defect " + std::to_string(defect) + ")");
    }
    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

std::vector<GlobalField> number_fields() {
    return {GlobalField::rational(), GlobalField::number_field({1, 0, 1}), GlobalField::number_field({-2, 0, 1})};
}

FieldElement random_nf(const GlobalField& K, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 6);
    for (;;) {
        std::vector<mpq_class> c;
        for (int i = 0; i < K.nf().degree(); ++i) c.emplace_back(num(rng), den(rng));
        for (auto& x : c) x.canonicalize();
        auto x = K.nf().element(c);
        if (!K.nf().is_zero(x)) return x;
    }
}

// |log_module| is capped so that the theta sums of D and K - D stay enumerable.
RepleteDivisor random_replete(const GlobalField& K, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> n(-3, 3);
    std::uniform_real_distribution<double> t(-3, 3);
    for (;;) {
        RepleteDivisor D;
        for (long p : {2L, 3L, 5L})
            for (const auto& P : K.nf().places_above(p))
                if (rng() % 2 == 0) D.finite[P] = n(rng);
        for (const auto& v : K.archimedean_places()) D.arch[v] = t(rng);
        D.normalize();
        if (std::fabs(log_module(K, D)) <= 8) return D;
    }
}

std::string field_name(const GlobalField& K) { return K.describe(); }

/// Divisors a[(t)] + b[inf] + c[P] with |a|, |b|, |c| <= bound and P the first
/// irreducible quadratic.
template <class Visit>
void ff_grid(const GlobalField& F, long bound, Visit visit) {
    const Place t0 = F.ff().place({F.ff().constants().zero(), F.ff().constants().one()});
    const Place inf = InfinitePlace{};
    const Place p2 = F.ff().places_of_degree(2).front();
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c) visit(single_place(t0, a) + single_place(inf, b) + single_place(p2, c));
}

std::string describe_ff(const GlobalField& F, const RepleteDivisor& D) {
    std::string s = "F_" + std::to_string(F.q()) + "(t), D =";
    for (const auto& [v, n] : D.finite) s += " " + std::to_string(n) + F.describe(v);
    return s;
}

Tally criterion_product_formula(const SuiteOptions& o) {
    Tally t;
    std::mt19937_64 rng(o.seed + 1);
    for (const auto& K : number_fields())
        for (int i = 0; i < 100; ++i) {
            auto x = random_nf(K, rng);
            t.bounded(product_formula_defect(K, x) - 1.0, 1e-12, field_name(K) + " x = " + to_string(K, x));
        }
    for (std::uint64_t q : {2, 5}) {
        auto F = GlobalField::function_field(q);
        for (int i = 0; i < 100; ++i) {
            auto x = F.ff().random(rng, 4);
            t.exact(product_formula_exponent(F, x) == 0 && product_formula_defect(F, x) == 1.0, field_name(F) + " x = " + to_string(F, x));
        }
    }
    return t;
}

Tally criterion_rr1d(const SuiteOptions& o) {
    Tally t;
    for (std::uint64_t q : {2, 3, 5}) {
        auto F = GlobalField::function_field(q);
        const long chi0 = chi_ff(F, {});
        ff_grid(F, 5, [&](const RepleteDivisor& D) { t.exact(chi_ff(F, D) - chi0 == degree(F, D), describe_ff(F, D)); });
    }
    std::mt19937_64 rng(o.seed + 2);
    for (const auto& K : number_fields())
        for (int i = 0; i < 20; ++i) t.bounded(rr_identity_defect(K, random_replete(K, rng)), 1e-9, field_name(K));
    return t;
}

Tally criterion_duality(const SuiteOptions& o) {
    Tally t;
    for (std::uint64_t q : {2, 3, 5}) {
        auto F = GlobalField::function_field(q);
        ff_grid(F, 5, [&](const RepleteDivisor& D) {
            t.exact(h1_ff_duality(F, D, o.enumeration_limit) == h1_ff_quotient(F, D), describe_ff(F, D));
        });
    }
    std::mt19937_64 rng(o.seed + 3);
    for (const auto& K : number_fields())
        for (int i = 0; i < 20; ++i) t.bounded(theta_duality_defect(K, random_replete(K, rng)), 1e-9, field_name(K));
    return t;
}

Tally criterion_theta_baseline(std::string& detail) {
    Tally t;
    long double direct = 0;
    for (int n = -30; n <= 30; ++n) direct += std::exp(-std::numbers::pi_v<long double> * n * n);
    const double reference = static_cast<double>(std::log(direct));
    const double h = theta_h0(GlobalField::rational(), {});
    t.bounded(h - reference, 1e-12, "theta_h0(Q, 0)");
    std::ostringstream s;
    s.precision(12);
    s << "theta_h0(Q,0) = " << h << ", 30-term sum gives " << reference;
    detail = s.str();
    return t;
}

Tally criterion_residues(const SuiteOptions& o) {
    Tally t;
    std::mt19937_64 rng(o.seed + 5);
    for (std::uint64_t q : {2, 3, 5}) {
        auto F = GlobalField::function_field(q);
        for (int i = 0; i < 200; ++i) {
            auto f = F.ff().random(rng, 4);
            t.exact(residue_sum_defect(F, f) == F.ff().constants().zero(), "residue sum of " + F.ff().to_string(f));
        }
    }
    auto F = GlobalField::function_field(2);
    const auto& k = F.ff().constants();
    const Place a = F.ff().place({k.zero(), k.one()}), b = F.ff().place({k.one(), k.one()}), inf = InfinitePlace{};
    const auto W = make_window({a, b, inf}, -4, 4);
    for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y)
            for (long z = -4; z <= 4; ++z) {
                auto Dp = single_place(a, x) + single_place(b, y) + single_place(inf, z);
                auto r = perp_in_window(F, W, Dp);
                t.exact(r.nondegenerate && r.perp_match && r.double_perp_match && r.dim_image + r.dim_perp == r.dim_v, describe_ff(F, Dp));
            }
    return t;
}

PlaneForm random_form(const ProjectivePlane& P, int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> c(0, P.q() - 1);
    for (;;) {
        std::string s;
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j) {
                const auto v = c(rng);
                if (v == 0) continue;
                if (!s.empty()) s += " + ";
                s += std::to_string(v) + "*X^" + std::to_string(i) + "*Y^" + std::to_string(j) + "*Z^" + std::to_string(d - i - j);
            }
        if (!s.empty()) return P.parse(s);
    }
}

Tally criterion_bezout(const SuiteOptions& o) {
    Tally t;
    std::mt19937_64 rng(o.seed + 6);
    const std::uint64_t qs[] = {2, 3, 5, 7};
    std::uniform_int_distribution<int> deg(1, 4);
    int done = 0;
    for (int attempt = 0; done < 50 && attempt < 1000; ++attempt) {
        ProjectivePlane P(qs[done % 4], o.seed);
        auto f = random_form(P, deg(rng), rng), g = random_form(P, deg(rng), rng);
        if (!P.coprime(f, g)) continue;
        const long de = static_cast<long>(f.degree) * g.degree;
        const std::string what = "q = " + std::to_string(P.q()) + ": (" + P.to_string(f) + ") . (" + P.to_string(g) + ")";
        t.exact(P.local_intersections(f, g).total == de, what + " local sum");
        t.exact(P.total_intersection(f, g) == de, what + " resultant degree");
        ++done;
    }
    if (done < 50) t.fail("only " + std::to_string(done) + " coprime pairs generated");
    return t;
}

/// Smooth curves over F_5 of degrees 1, 2, 3.
std::vector<PlaneForm> smooth_pool(const ProjectivePlane& P) {
    std::vector<PlaneForm> pool;
    for (const char* s : {"X", "Y", "Z", "X + Y + Z", "X + 2*Y + 3*Z", "Y*Z - X^2", "X^2 + Y^2 + 2*Z^2", "X*Y + Y*Z + Z*X",
                          "Y^2*Z - X^3 - X*Z^2", "X^3 + Y^3 + Z^3"}) {
        auto f = P.parse(s);
        if (!P.is_smooth(f)) throw std::logic_error(std::string("verification pool: ") + s + " is not smooth");
        pool.push_back(std::move(f));
    }
    return pool;
}

PlaneDivisor random_plane_divisor(const std::vector<PlaneForm>& pool, long max_abs_degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> terms(1, 3);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (;;) {
        PlaneDivisor D;
        const int n = terms(rng);
        for (int i = 0; i < n; ++i) D += coef(rng) * single_curve(pool[pick(rng)]);
        if (std::abs(D.degree()) <= max_abs_degree) return D;
    }
}

Tally criterion_index(const SuiteOptions& o) {
    Tally t;
    ProjectivePlane P(5, o.seed);
    const auto pool = smooth_pool(P);
    std::mt19937_64 rng(o.seed + 7);
    // div(C / (X Z)) and div(E / (X Y Z)) are principal.
    const auto h1 = single_curve(P.parse("Y*Z - X^2")) - single_curve(P.parse("X")) - single_curve(P.parse("Z"));
    const auto h2 = single_curve(P.parse("Y^2*Z - X^3 - X*Z^2")) - single_curve(P.parse("X")) - single_curve(P.parse("Y")) - single_curve(P.parse("Z"));
    for (int i = 0; i < 120; ++i) {
        auto A = random_plane_divisor(pool, 6, rng), A2 = random_plane_divisor(pool, 6, rng), B = random_plane_divisor(pool, 6, rng);
        const std::string what = "A = " + P.to_string(A) + ", B = " + P.to_string(B);
        const long ab = P.index(A, B);
        t.exact(ab == P.index(B, A), what + " symmetry");
        t.exact(P.index(A + A2, B) == ab + P.index(A2, B), what + " bilinearity");
        t.exact(P.index(A + h1, B) == ab && P.index(A, B + h2) == ab, what + " principal invariance");
        t.exact(ab == A.degree() * B.degree(), what + " classical intersection number");
    }
    return t;
}

Tally criterion_chi(const SuiteOptions& o) {
    Tally t;
    ProjectivePlane P(5, o.seed);
    const auto pool = smooth_pool(P);
    auto check = [&](const PlaneDivisor& D) {
        const std::string what = "D = " + P.to_string(D);
        t.exact(P.duality_defect_2d(D) == 0, what + " duality");
        t.exact(P.rr2d_defect(D) == 0, what + " Riemann-Roch");
        const long base = P.chi_inductive(D);
        bool same = true;
        for (std::uint64_t s = 1; s <= 10; ++s) same &= P.chi_inductive(D, o.seed + s) == base;
        t.exact(same, what + " peel order");
    };
    const auto line = single_curve(P.parse("Z"));
    for (long d = -5; d <= 5; ++d) check(d * line);
    std::mt19937_64 rng(o.seed + 8);
    for (int i = 0; i < 20; ++i) check(random_plane_divisor(pool, 6, rng));
    return t;
}

Tally criterion_h_numbers(const SuiteOptions& o) {
    Tally t;
    ProjectivePlane P(2, o.seed);
    const auto line = single_curve(P.parse("Z"));
    for (long d = 0; d <= 4; ++d) {
        const auto D = d * line;
        const auto r = P.h_numbers_geometric(D);
        const auto dual = P.h_numbers_geometric(P.canonical() - D);
        const std::string what = "d = " + std::to_string(d);
        t.exact(r.h0 == (d + 1) * (d + 2) / 2, what + " h0");
        t.exact(r.h1 == 0, what + " h1");
        t.exact(r.h2 == dual.h0, what + " h2");
    }
    return t;
}

const char* criterion_name(int id) {
    switch (id) {
        case 1: return "product formula";
        case 2: return "1D Riemann-Roch";
        case 3: return "duality h1(D) = h0(K - D)";
        case 4: return "theta baseline on Q";
        case 5: return "residue reciprocity and orthogonality";
        case 6: return "Bezout";
        case 7: return "index properties";
        case 8: return "chi identities on P^2";
        case 9: return "geometric h-numbers";
        default: return "?";
    }
}

double criterion_budget(int id) {
    switch (id) {
        case 1: return 5;
        case 2: return 30;
        case 3: return 60;
        case 5: return 30;
        case 6: return 60;
        case 8: return 30;
        default: return 0;
    }
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
    if (id < 1 || id > kCriteria) throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    r.budget_seconds = criterion_budget(id);
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string detail;
    try {
        switch (id) {
            case 1: t = criterion_product_formula(opts); break;
            case 2: t = criterion_rr1d(opts); break;
            case 3: t = criterion_duality(opts); break;
            case 4: t = criterion_theta_baseline(detail); break;
            case 5: t = criterion_residues(opts); break;
            case 6: t = criterion_bezout(opts); break;
            case 7: t = criterion_index(opts); break;
            case 8: t = criterion_chi(opts); break;
            case 9: t = criterion_h_numbers(opts); break;
        }
    } catch (const std::exception& e) {
        t.fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.cases = t.cases;
    r.worst_defect = t.worst;
    r.correct = t.failures == 0;
    r.within_budget = r.budget_seconds == 0 || r.seconds < r.budget_seconds;
    r.pass = r.correct && r.within_budget;
    if (!r.correct)
        r.detail = std::to_string(t.failures) + " failing case(s); first: " + t.first_failure;
    else if (!detail.empty())
        r.detail = detail;
    else
        r.detail = std::to_string(t.cases) + " checks";
    if (r.correct && t.worst > 0) {
        std::ostringstream s;
        s << "; max |defect| " << t.worst;
        r.detail += s.str();
    }
    return r;
}

std::vector<CriterionResult> run_suite(const std::vector<int>& ids, const SuiteOptions& opts,
                                       const std::function<void(const CriterionResult&)>& progress) {
    std::vector<int> which = ids;
    if (which.empty())
        for (int i = 1; i <= kCriteria; ++i) which.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : which) {
        out.push_back(run_criterion(id, opts));
        if (progress) progress(out.back());
    }
    return out;
}

}  // namespace adelic
