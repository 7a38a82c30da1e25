#include "adelic/surface_geom.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "adelic/ext_field.hpp"
#include "adelic/poly.hpp"

namespace adelic {

namespace {

using GF = GaloisField;
using L1 = ExtField<GF>;
using L2 = ExtField<L1>;

// Bivariate polynomial: entry j is the coefficient of v^j, a polynomial in u.
template <Field E>
using Biv = std::vector<Poly<E>>;

template <Field E>
using Form = std::map<std::array<int, 3>, typename E::elem>;

template <Field E>
void btrim(const E& k, Biv<E>& b) {
    for (auto& p : b) poly::trim(k, p);
    while (!b.empty() && b.back().empty()) b.pop_back();
}

template <Field E>
Biv<E> bsub(const E& k, const Biv<E>& a, const Biv<E>& b) {
    Biv<E> r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Poly<E> zero;
        r[i] = poly::sub(k, i < a.size() ? a[i] : zero, i < b.size() ? b[i] : zero);
    }
    btrim(k, r);
    return r;
}

template <Field E>
Biv<E> bscale(const E& k, const typename E::elem& c, Biv<E> a) {
    for (auto& p : a) p = poly::scale(k, c, std::move(p));
    btrim(k, a);
    return a;
}

template <Field E>
Biv<E> bmul(const E& k, const Biv<E>& a, const Biv<E>& b) {
    if (a.empty() || b.empty()) return {};
    Biv<E> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = poly::add(k, r[i + j], poly::mul(k, a[i], b[j]));
    btrim(k, r);
    return r;
}

/// B(u + a, v + b).
template <Field E>
Biv<E> translate(const E& k, Biv<E> B, const typename E::elem& a, const typename E::elem& b) {
    for (auto& p : B) p = poly::taylor_shift(k, p, a);
    Biv<E> r;
    for (auto it = B.rbegin(); it != B.rend(); ++it) {
        Biv<E> next(r.size() + 1);
        for (std::size_t i = 0; i < r.size(); ++i) {
            next[i + 1] = poly::add(k, next[i + 1], r[i]);
            next[i] = poly::add(k, next[i], poly::scale(k, b, r[i]));
        }
        next[0] = poly::add(k, next[0], *it);
        r = std::move(next);
    }
    btrim(k, r);
    return r;
}

template <Field A, Field B, class Embed>
Biv<B> lift(const B& kb, const Biv<A>& x, Embed embed) {
    Biv<B> r;
    for (const auto& p : x) {
        Poly<B> q;
        for (const auto& c : p) q.push_back(embed(c));
        r.push_back(std::move(q));
    }
    btrim(kb, r);
    return r;
}

/// Fraction-free determinant over E[u].
template <Field E>
Poly<E> det_bareiss(const E& k, std::vector<std::vector<Poly<E>>> m) {
    const std::size_t n = m.size();
    if (n == 0) return poly::constant(k, k.one());
    Poly<E> prev = poly::constant(k, k.one());
    bool negate = false;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        if (m[c][c].empty()) {
            std::size_t r = c + 1;
            while (r < n && m[r][c].empty()) ++r;
            if (r == n) return {};
            std::swap(m[r], m[c]);
            negate = !negate;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                auto t = poly::sub(k, poly::mul(k, m[i][j], m[c][c]), poly::mul(k, m[i][c], m[c][j]));
                m[i][j] = poly::exact_div(k, t, prev);
            }
            m[i][c].clear();
        }
        prev = m[c][c];
    }
    auto d = m[n - 1][n - 1];
    return negate ? poly::neg(k, d) : d;
}

/// Res_v(a, b) via the Sylvester matrix.
template <Field E>
Poly<E> resultant_v(const E& k, const Biv<E>& a, const Biv<E>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    if (m == 0) return poly::pow(k, a[0], static_cast<unsigned>(n));
    if (n == 0) return poly::pow(k, b[0], static_cast<unsigned>(m));
    std::vector<std::vector<Poly<E>>> s(m + n, std::vector<Poly<E>>(m + n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s[i][i + (m - j)] = a[j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + (n - j)] = b[j];
    return det_bareiss(k, std::move(s));
}

/// Intersection multiplicity at the origin (Fulton's algorithm).
template <Field E>
int fulton(const E& k, Biv<E> F, Biv<E> G) {
    int total = 0;
    auto vanishes = [&](const Biv<E>& P) { return P.empty() || P[0].empty() || k.is_zero(P[0][0]); };
    for (int guard = 0; guard < 1'000'000; ++guard) {
        btrim(k, F);
        btrim(k, G);
        if (!vanishes(F) || !vanishes(G)) return total;
        bool fa = F.empty() || F[0].empty();
        bool gb = G.empty() || G[0].empty();
        if (fa && gb) throw std::domain_error("intersection: common component through the point");
        if (gb) {
            std::swap(F, G);
            std::swap(fa, gb);
        }
        if (fa) {
            std::size_t ord = 0;
            while (k.is_zero(G[0][ord])) ++ord;
            total += static_cast<int>(ord);
            F.erase(F.begin());
            continue;
        }
        int r = poly::deg(F[0]), s = poly::deg(G[0]);
        if (r > s) {
            std::swap(F, G);
            std::swap(r, s);
        }
        Biv<E> shifted = F;
        for (auto& p : shifted) p = poly::shift(k, p, s - r);
        G = bsub(k, bscale(k, F[0].back(), G), bscale(k, G[0].back(), shifted));
    }
    throw std::logic_error("intersection: multiplicity computation did not terminate");
}

template <Field E>
typename E::elem eval_form(const E& k, const Form<E>& f, const std::array<typename E::elem, 3>& P) {
    auto s = k.zero();
    for (const auto& [e, c] : f) {
        auto t = c;
        for (int i = 0; i < 3; ++i) t = k.mul(t, k.pow(P[static_cast<std::size_t>(i)], static_cast<std::uint64_t>(e[static_cast<std::size_t>(i)])));
        s = k.add(s, t);
    }
    return s;
}

/// Degree of Res_Z(f(x,1,Z), g(x,1,Z)) after a random coordinate change, or
/// nothing if no admissible change turned up.
template <Field E>
std::optional<long> sheared_degree(const E& k, const Form<E>& f, int df, const Form<E>& g, int dg, std::mt19937_64& rng, int attempts) {
    using elem = typename E::elem;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::array<std::array<elem, 3>, 3> M;
        // Third column: a point on neither curve, so both stay monic in Z.
        bool found = false;
        for (int t = 0; t < 64 && !found; ++t) {
            std::array<elem, 3> P{k.random(rng), k.random(rng), k.random(rng)};
            if (k.is_zero(P[0]) && k.is_zero(P[1]) && k.is_zero(P[2])) continue;
            if (k.is_zero(eval_form(k, f, P)) || k.is_zero(eval_form(k, g, P))) continue;
            for (int i = 0; i < 3; ++i) M[static_cast<std::size_t>(i)][2] = P[static_cast<std::size_t>(i)];
            found = true;
        }
        if (!found) continue;
        found = false;
        for (int t = 0; t < 64 && !found; ++t) {
            for (int i = 0; i < 3; ++i) {
                M[static_cast<std::size_t>(i)][0] = k.random(rng);
                M[static_cast<std::size_t>(i)][1] = k.random(rng);
            }
            auto minor = [&](int a, int b, int c, int d) { return k.sub(k.mul(M[a][b], M[c][d]), k.mul(M[a][d], M[c][b])); };
            auto det = k.add(k.sub(k.mul(M[0][0], minor(1, 1, 2, 2)), k.mul(M[0][1], minor(1, 0, 2, 2))), k.mul(M[0][2], minor(1, 0, 2, 1)));
            found = !k.is_zero(det);
        }
        if (!found) continue;

        // Old variable i becomes M[i][0] x + M[i][1] + M[i][2] Z.
        std::array<Biv<E>, 3> lin;
        for (std::size_t i = 0; i < 3; ++i) {
            lin[i] = {Poly<E>{M[i][1], M[i][0]}, Poly<E>{M[i][2]}};
            btrim(k, lin[i]);
        }
        auto substitute = [&](const Form<E>& h) {
            Biv<E> r;
            for (const auto& [e, c] : h) {
                Biv<E> t{Poly<E>{c}};
                for (std::size_t i = 0; i < 3; ++i)
                    for (int j = 0; j < e[i]; ++j) t = bmul(k, t, lin[i]);
                r = bsub(k, r, bscale(k, k.neg(k.one()), t));
            }
            return r;
        };
        auto F = substitute(f), G = substitute(g);
        auto R = resultant_v(k, F, G);
        if (R.empty()) throw std::domain_error("total_intersection: the forms share a common component");
        if (poly::deg(R) == df * dg) return poly::deg(R);
    }
    return std::nullopt;
}

template <Field E>
std::string poly_str(const E& k, const Poly<E>& p, const std::string& var, auto&& coeff_str) {
    if (p.empty()) return "0";
    std::string s;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (k.is_zero(p[i])) continue;
        if (!s.empty()) s += " + ";
        const bool unit = k.is_zero(k.sub(p[i], k.one()));
        if (i == 0 || !unit) s += coeff_str(p[i]);
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

Biv<GF> chart_poly(const GF& k, const PlaneForm& f, int ui, int vi) {
    Biv<GF> b;
    for (const auto& [e, c] : f.terms) {
        const auto a = static_cast<std::size_t>(e[static_cast<std::size_t>(ui)]);
        const auto v = static_cast<std::size_t>(e[static_cast<std::size_t>(vi)]);
        if (b.size() <= v) b.resize(v + 1);
        if (b[v].size() <= a) b[v].resize(a + 1, k.zero());
        b[v][a] = k.add(b[v][a], c);
    }
    btrim(k, b);
    return b;
}

struct ChartSpec {
    const char* name;
    int u, v;
};

constexpr ChartSpec kAffine{"Z=1", 0, 1};
constexpr ChartSpec kAtInfinity{"Y=1", 0, 2};
constexpr ChartSpec kCorner{"X=1", 1, 2};

/// Closed points over the irreducible factors of an eliminant in one chart.
/// With zero_fiber only the points with v = 0 are visited.
void chart_points(const GF& k, const ChartSpec& chart, const PlaneForm& f, const PlaneForm& g, const std::vector<PlaneForm>& extra,
                  const Poly<GF>& eliminant, bool zero_fiber, IntersectionReport& report, bool& extra_common) {
    if (poly::deg(eliminant) < 1) return;
    const auto F = chart_poly(k, f, chart.u, chart.v), G = chart_poly(k, g, chart.u, chart.v);
    std::vector<Biv<GF>> X;
    for (const auto& h : extra) X.push_back(chart_poly(k, h, chart.u, chart.v));

    auto gf_str = [&](gf_elem c) { return k.to_string(c); };
    for (const auto& fac : poly::factor(k, eliminant)) {
        const L1 L(k, fac.poly);
        const auto alpha = L.gen();
        auto to_l = [&](gf_elem c) { return L.embed(c); };
        auto fiber = [&](const Biv<GF>& B) {
            Poly<L1> r;
            for (const auto& p : lift<GF, L1>(L, B, to_l)) r.push_back(poly::eval(L, p, alpha));
            poly::trim(L, r);
            return r;
        };
        std::vector<Poly<L1>> fiber_factors;
        if (zero_fiber) {
            fiber_factors.push_back(poly::x(L));
        } else {
            auto fa = fiber(F), ga = fiber(G);
            if (fa.empty() && ga.empty()) throw std::domain_error("intersection: the forms share a common component");
            auto h = poly::gcd(L, fa, ga);
            if (poly::deg(h) < 1) continue;
            for (auto& s : poly::factor(L, h)) fiber_factors.push_back(s.poly);
        }
        auto l_str = [&](const L1::elem& c) {
            if (L.degree() == 1) return k.to_string(c[0]);
            return "(" + poly_str(k, Poly<GF>(c.begin(), c.end()), "a", gf_str) + ")";
        };
        for (const auto& s : fiber_factors) {
            const L2 M(L, s);
            const auto beta = M.gen();
            const auto alpha_m = M.embed(alpha);
            auto to_m = [&](gf_elem c) { return M.embed(L.embed(c)); };
            auto local = [&](const Biv<GF>& B) { return translate(M, lift<GF, L2>(M, B, to_m), alpha_m, beta); };
            IntersectionPoint pt;
            pt.chart = chart.name;
            pt.eliminant = poly_str(k, fac.poly, "u", gf_str);
            pt.fiber = poly_str(L, s, "v", l_str);
            pt.residue_degree = poly::deg(fac.poly) * poly::deg(s);
            pt.multiplicity = fulton(M, local(F), local(G));
            report.total += static_cast<long>(pt.residue_degree) * pt.multiplicity;
            report.points.push_back(std::move(pt));
            bool all = true;
            for (const auto& B : X) {
                auto t = local(B);
                if (!t.empty() && !t[0].empty() && !M.is_zero(t[0][0])) all = false;
            }
            if (all) extra_common = true;
        }
    }
}

IntersectionReport intersect(const GF& k, const PlaneForm& f, const PlaneForm& g, const std::vector<PlaneForm>& extra, bool& extra_common) {
    IntersectionReport report;
    extra_common = false;

    // Affine chart Z = 1 with u = X, v = Y.
    {
        auto F = chart_poly(k, f, 0, 1), G = chart_poly(k, g, 0, 1);
        Poly<GF> R;
        if (F.empty() || G.empty()) throw std::domain_error("intersection: zero form");
        if (F.size() == 1 && G.size() == 1)
            R = poly::gcd(k, F[0], G[0]);
        else if (F.size() == 1)
            R = F[0];
        else if (G.size() == 1)
            R = G[0];
        else
            R = resultant_v(k, F, G);
        if (R.empty()) throw std::domain_error("intersection: the forms share a common component");
        chart_points(k, kAffine, f, g, extra, R, false, report, extra_common);
    }
    // Line Z = 0 away from (1:0:0): chart Y = 1, u = X, v = Z, points with v = 0.
    {
        auto F = chart_poly(k, f, 0, 2), G = chart_poly(k, g, 0, 2);
        Poly<GF> f0 = F.empty() ? Poly<GF>{} : F[0], g0 = G.empty() ? Poly<GF>{} : G[0];
        if (f0.empty() && g0.empty()) throw std::domain_error("intersection: the forms share the component Z");
        chart_points(k, kAtInfinity, f, g, extra, poly::gcd(k, f0, g0), true, report, extra_common);
    }
    // The point (1:0:0).
    {
        auto coeff = [&](const PlaneForm& h) {
            auto it = h.terms.find({h.degree, 0, 0});
            return it == h.terms.end() ? k.zero() : it->second;
        };
        if (k.is_zero(coeff(f)) && k.is_zero(coeff(g))) chart_points(k, kCorner, f, g, extra, poly::x(k), true, report, extra_common);
    }
    return report;
}

PlaneForm make_form(const GF& k, std::map<std::array<int, 3>, gf_elem> terms) {
    std::erase_if(terms, [&](const auto& t) { return k.is_zero(t.second); });
    if (terms.empty()) throw std::invalid_argument("plane form: zero polynomial");
    PlaneForm f;
    f.degree = -1;
    for (const auto& [e, c] : terms) {
        const int d = e[0] + e[1] + e[2];
        if (f.degree >= 0 && d != f.degree) throw std::invalid_argument("plane form: not homogeneous");
        f.degree = d;
    }
    if (f.degree < 1) throw std::invalid_argument("plane form: degree must be at least 1");
    const auto li = k.inv(terms.rbegin()->second);
    for (auto& [e, c] : terms) c = k.mul(c, li);
    f.terms = std::move(terms);
    return f;
}

PlaneForm partial(const GF& k, const PlaneForm& f, int var, bool& zero) {
    std::map<std::array<int, 3>, gf_elem> t;
    for (const auto& [e, c] : f.terms) {
        if (e[static_cast<std::size_t>(var)] == 0) continue;
        auto e2 = e;
        --e2[static_cast<std::size_t>(var)];
        auto v = k.mul(k.from_int(e[static_cast<std::size_t>(var)]), c);
        if (!k.is_zero(v)) t[e2] = k.add(t.count(e2) ? t[e2] : k.zero(), v);
    }
    std::erase_if(t, [&](const auto& x) { return k.is_zero(x.second); });
    zero = t.empty();
    if (zero) return {};
    PlaneForm p;
    p.terms = std::move(t);
    p.degree = f.degree - 1;
    return p;
}

Poly<GF> irreducible_of_degree(const GF& k, int m) {
    const std::uint64_t q = k.size();
    std::uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly<GF> p(static_cast<std::size_t>(m) + 1, k.zero());
        p[static_cast<std::size_t>(m)] = k.one();
        std::uint64_t r = idx;
        for (int i = 0; i < m; ++i) {
            p[static_cast<std::size_t>(i)] = k.element(r % q);
            r /= q;
        }
        if (poly::is_irreducible(k, p)) return p;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

// ---- PlaneDivisor ----

void PlaneDivisor::normalize() {
    std::erase_if(terms, [](const auto& t) { return t.second == 0; });
}

PlaneDivisor& PlaneDivisor::operator+=(const PlaneDivisor& o) {
    for (const auto& [f, n] : o.terms) terms[f] += n;
    normalize();
    return *this;
}

PlaneDivisor& PlaneDivisor::operator-=(const PlaneDivisor& o) {
    for (const auto& [f, n] : o.terms) terms[f] -= n;
    normalize();
    return *this;
}

PlaneDivisor PlaneDivisor::operator-() const {
    PlaneDivisor r = *this;
    for (auto& [f, n] : r.terms) n = -n;
    return r;
}

PlaneDivisor operator*(long n, PlaneDivisor a) {
    for (auto& [f, c] : a.terms) c *= n;
    a.normalize();
    return a;
}

long PlaneDivisor::degree() const {
    long d = 0;
    for (const auto& [f, n] : terms) d += n * f.degree;
    return d;
}

PlaneDivisor single_curve(const PlaneForm& f, long n) {
    PlaneDivisor D;
    D.terms[f] = n;
    D.normalize();
    return D;
}

// ---- ProjectivePlane ----

ProjectivePlane::ProjectivePlane(std::uint64_t q, std::uint64_t seed) : k_(q), seed_(seed) {}

PlaneForm ProjectivePlane::parse(const std::string& text) const {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto integer = [&] {
        skip();
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("plane form: expected an integer at position " + std::to_string(i) + " in '" + text + "'");
        long long v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            if (v > (1LL << 40)) throw std::invalid_argument("plane form: integer too large in '" + text + "'");
            ++i;
        }
        return v;
    };
    std::map<std::array<int, 3>, gf_elem> terms;
    bool first = true;
    skip();
    if (i >= text.size()) throw std::invalid_argument("plane form: empty");
    while (true) {
        skip();
        if (i >= text.size()) break;
        bool negative = false;
        if (text[i] == '+' || text[i] == '-') {
            negative = text[i] == '-';
            ++i;
        } else if (!first) {
            throw std::invalid_argument("plane form: expected '+' or '-' at position " + std::to_string(i) + " in '" + text + "'");
        }
        first = false;
        gf_elem c = k_.one();
        std::array<int, 3> e{0, 0, 0};
        bool any = false;
        while (true) {
            skip();
            if (i >= text.size()) break;
            const char ch = text[i];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c = k_.mul(c, k_.from_int(integer()));
            } else if (ch == 'X' || ch == 'Y' || ch == 'Z' || ch == 'x' || ch == 'y' || ch == 'z') {
                ++i;
                const int var = std::toupper(static_cast<unsigned char>(ch)) - 'X';
                long long p = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    p = integer();
                    if (p > 64) throw std::invalid_argument("plane form: exponent too large in '" + text + "'");
                }
                e[static_cast<std::size_t>(var)] += static_cast<int>(p);
            } else {
                throw std::invalid_argument(std::string("plane form: unexpected '") + ch + "' at position " + std::to_string(i) + " in '" + text + "'");
            }
            any = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            if (i < text.size() && (text[i] == '+' || text[i] == '-')) break;
        }
        if (!any) throw std::invalid_argument("plane form: empty term in '" + text + "'");
        if (negative) c = k_.neg(c);
        terms[e] = k_.add(terms.count(e) ? terms[e] : k_.zero(), c);
    }
    return make_form(k_, std::move(terms));
}

PlaneForm ProjectivePlane::line(gf_elem a, gf_elem b, gf_elem c) const {
    return make_form(k_, {{{1, 0, 0}, a}, {{0, 1, 0}, b}, {{0, 0, 1}, c}});
}

std::string ProjectivePlane::to_string(const PlaneForm& f) const {
    std::string s;
    static const char* names[] = {"X", "Y", "Z"};
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!s.empty()) s += " + ";
        std::string mono;
        for (std::size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[v];
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        if (c != k_.one()) s += k_.to_string(c) + "*";
        s += mono;
    }
    return s;
}

std::string ProjectivePlane::to_string(const PlaneDivisor& D) const {
    if (D.terms.empty()) return "0";
    std::string s;
    for (const auto& [f, n] : D.terms) {
        if (!s.empty()) s += " + ";
        s += std::to_string(n) + "[" + to_string(f) + "]";
    }
    return s;
}

bool ProjectivePlane::coprime(const PlaneForm& f, const PlaneForm& g) const {
    auto divisible_by_z = [](const PlaneForm& h) {
        for (const auto& [e, c] : h.terms)
            if (e[2] == 0) return false;
        return true;
    };
    if (divisible_by_z(f) && divisible_by_z(g)) return false;
    auto F = chart_poly(k_, f, 0, 1), G = chart_poly(k_, g, 0, 1);
    auto content = [&](const Biv<GF>& B) {
        Poly<GF> c;
        for (const auto& p : B) c = poly::gcd(k_, c, p);
        return c;
    };
    if (poly::deg(poly::gcd(k_, content(F), content(G))) >= 1) return false;
    if (F.size() >= 2 && G.size() >= 2 && resultant_v(k_, F, G).empty()) return false;
    return true;
}

void ProjectivePlane::validate(const PlaneDivisor& D) const {
    for (auto a = D.terms.begin(); a != D.terms.end(); ++a)
        for (auto b = std::next(a); b != D.terms.end(); ++b)
            if (!coprime(a->first, b->first))
                throw std::invalid_argument("plane divisor: forms " + to_string(a->first) + " and " + to_string(b->first) + " share a component");
}

long ProjectivePlane::total_intersection(const PlaneForm& f, const PlaneForm& g) const {
    if (!coprime(f, g)) throw std::domain_error("total_intersection: " + to_string(f) + " and " + to_string(g) + " share a common component");
    std::mt19937_64 rng(seed_);
    constexpr int kRetries = 8;
    if (auto d = sheared_degree(k_, Form<GF>(f.terms.begin(), f.terms.end()), f.degree, Form<GF>(g.terms.begin(), g.terms.end()), g.degree, rng, kRetries))
        return *d;
    // Too few rational points: move to an extension with at least 64 elements.
    int m = 1;
    for (std::uint64_t s = k_.size(); s < 64; s *= k_.size()) ++m;
    if (m == 1) m = 2;
    const L1 E(k_, irreducible_of_degree(k_, m));
    auto lift_form = [&](const PlaneForm& h) {
        Form<L1> r;
        for (const auto& [e, c] : h.terms) r[e] = E.embed(c);
        return r;
    };
    if (auto d = sheared_degree(E, lift_form(f), f.degree, lift_form(g), g.degree, rng, kRetries)) return *d;
    throw std::runtime_error("total_intersection: retries exhausted; enlarge the base field");
}

IntersectionReport ProjectivePlane::local_intersections(const PlaneForm& f, const PlaneForm& g) const {
    if (!coprime(f, g)) throw std::domain_error("local_intersections: " + to_string(f) + " and " + to_string(g) + " share a common component");
    bool unused = false;
    return intersect(k_, f, g, {}, unused);
}

bool ProjectivePlane::is_smooth(const PlaneForm& f) const {
    if (f.degree == 1) return true;
    std::vector<PlaneForm> nonzero;
    for (int v = 0; v < 3; ++v) {
        bool zero = false;
        auto p = partial(k_, f, v, zero);
        if (!zero) nonzero.push_back(std::move(p));
    }
    if (nonzero.empty()) return false;
    const PlaneForm first = nonzero.front();
    if (!coprime(f, first)) return false;
    std::vector<PlaneForm> rest(nonzero.begin() + 1, nonzero.end());
    bool singular = false;
    intersect(k_, f, first, rest, singular);
    return !singular;
}

PlaneForm ProjectivePlane::line_avoiding(const PlaneForm& y) const {
    const std::uint64_t q = k_.size();
    for (std::uint64_t idx = 0; idx < q * q * q; ++idx) {
        const gf_elem a = k_.element(idx / (q * q)), b = k_.element((idx / q) % q), c = k_.element(idx % q);
        if (k_.is_zero(a) && k_.is_zero(b) && k_.is_zero(c)) continue;
        auto L = line(a, b, c);
        if (coprime(L, y)) return L;
    }
    throw std::runtime_error("no line over the base field avoids " + to_string(y));
}

long ProjectivePlane::pair_intersection(const PlaneForm& z, const PlaneForm& y) const {
    auto key = z < y ? std::make_pair(z, y) : std::make_pair(y, z);
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    long v;
    if (coprime(z, y)) {
        v = total_intersection(z, y);
    } else {
        // z is linearly equivalent to deg z copies of a line missing y.
        v = z.degree * total_intersection(line_avoiding(y), y);
    }
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(std::move(key), v);
    return v;
}

long ProjectivePlane::restriction_degree(const PlaneDivisor& D, const PlaneForm& y) const {
    if (D.terms.count(y)) throw std::invalid_argument("restriction_degree: " + to_string(y) + " lies in the support of the divisor");
    long s = 0;
    for (const auto& [z, n] : D.terms) {
        if (!coprime(z, y)) throw std::invalid_argument("restriction_degree: " + to_string(z) + " shares a component with " + to_string(y));
        s += n * total_intersection(z, y);
    }
    return s;
}

long ProjectivePlane::index(const PlaneDivisor& A, const PlaneDivisor& B) const {
    long s = 0;
    for (const auto& [z, n] : A.terms)
        for (const auto& [w, m] : B.terms) s += n * m * pair_intersection(z, w);
    return s;
}

PlaneDivisor ProjectivePlane::canonical() const { return single_curve(parse("Z"), -3); }

long ProjectivePlane::chi_inductive(const PlaneDivisor& D, std::uint64_t order_seed) const {
    std::vector<std::pair<const PlaneForm*, int>> steps;
    for (const auto& [y, n] : D.terms)
        for (long i = 0; i < std::abs(n); ++i) steps.emplace_back(&y, n > 0 ? 1 : -1);
    if (order_seed != 0) {
        std::mt19937_64 rng(order_seed);
        std::shuffle(steps.begin(), steps.end(), rng);
    }
    PlaneDivisor cur;
    long chi = 0;
    auto deg_on = [&](const PlaneForm& y) {
        long s = 0;
        for (const auto& [z, n] : cur.terms) s += n * pair_intersection(z, y);
        return s;
    };
    for (const auto& [y, sign] : steps) {
        const long g = y->arithmetic_genus();
        if (sign > 0) {
            cur += single_curve(*y);
            chi += deg_on(*y) + 1 - g;
        } else {
            chi -= deg_on(*y) + 1 - g;
            cur -= single_curve(*y);
        }
    }
    return chi;
}

long ProjectivePlane::duality_defect_2d(const PlaneDivisor& D) const { return chi_inductive(D) - chi_inductive(canonical() - D); }

long ProjectivePlane::rr2d_defect(const PlaneDivisor& D) const {
    const long twice = 2 * chi_inductive(D) + index(D, canonical() - D);
    if (twice % 2 != 0) throw std::logic_error("rr2d_defect: half-integral defect");
    return twice / 2;
}

SurfaceHReport ProjectivePlane::h_numbers_geometric(const PlaneDivisor& D) const {
    // Every divisor on P^2 is linearly equivalent to d H, and H^0(dH) is spanned by the degree-d monomials.
    auto log_h0 = [](long d) { return d < 0 ? 0L : (d + 1) * (d + 2) / 2; };
    SurfaceHReport r;
    r.degree = D.degree();
    r.log_c_star = -log_h0(canonical().degree());
    r.n1 = 0;
    r.h0 = log_h0(r.degree) + r.log_c_star;
    r.h2 = log_h0(canonical().degree() - r.degree) + r.log_c_star;
    r.chi = chi_inductive(D) + 1;  // chi(0) = log q
    r.h1 = r.h0 + r.h2 - r.chi + r.n1;
    return r;
}

}  // namespace adelic
