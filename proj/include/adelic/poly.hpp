#pragma once

// Dense univariate polynomials over a finite field, with gcd, modular
// powering and Cantor-Zassenhaus factorization.  Everything is generic over
// the Field concept so the same code runs over F_q and over its extension
// towers.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace adelic {

template <class F>
concept Field = requires(const F& k, typename F::elem a, typename F::elem b, std::mt19937_64& rng) {
    { k.zero() } -> std::convertible_to<typename F::elem>;
    { k.one() } -> std::convertible_to<typename F::elem>;
    { k.add(a, b) } -> std::convertible_to<typename F::elem>;
    { k.sub(a, b) } -> std::convertible_to<typename F::elem>;
    { k.neg(a) } -> std::convertible_to<typename F::elem>;
    { k.mul(a, b) } -> std::convertible_to<typename F::elem>;
    { k.inv(a) } -> std::convertible_to<typename F::elem>;
    { k.pow(a, std::uint64_t{2}) } -> std::convertible_to<typename F::elem>;
    { k.is_zero(a) } -> std::convertible_to<bool>;
    { k.from_int(1LL) } -> std::convertible_to<typename F::elem>;
    { k.random(rng) } -> std::convertible_to<typename F::elem>;
    { k.size() } -> std::convertible_to<std::uint64_t>;
    { k.characteristic() } -> std::convertible_to<std::uint32_t>;
};

template <class F>
using Poly = std::vector<typename F::elem>;

template <class F>
struct PolyFactor {
    Poly<F> poly;
    int multiplicity;
};

namespace poly {

template <class V>
int deg(const V& a) {
    return static_cast<int>(a.size()) - 1;
}

template <Field F>
void trim(const F& k, Poly<F>& a) {
    while (!a.empty() && k.is_zero(a.back())) a.pop_back();
}

template <Field F>
Poly<F> constant(const F& k, const typename F::elem& c) {
    Poly<F> r{c};
    trim(k, r);
    return r;
}

template <Field F>
Poly<F> monomial(const F& k, const typename F::elem& c, int n) {
    if (k.is_zero(c)) return {};
    Poly<F> r(static_cast<std::size_t>(n) + 1, k.zero());
    r.back() = c;
    return r;
}

template <Field F>
Poly<F> x(const F& k) {
    return monomial(k, k.one(), 1);
}

template <Field F>
bool is_one(const F& k, const Poly<F>& a) {
    return a.size() == 1 && a[0] == k.one();
}

template <Field F>
Poly<F> add(const F& k, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r(std::max(a.size(), b.size()), k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = k.add(r[i], b[i]);
    trim(k, r);
    return r;
}

template <Field F>
Poly<F> neg(const F& k, Poly<F> a) {
    for (auto& c : a) c = k.neg(c);
    return a;
}

template <Field F>
Poly<F> sub(const F& k, const Poly<F>& a, const Poly<F>& b) {
    return add(k, a, neg(k, b));
}

template <Field F>
Poly<F> scale(const F& k, const typename F::elem& c, Poly<F> a) {
    for (auto& v : a) v = k.mul(c, v);
    trim(k, a);
    return a;
}

template <Field F>
Poly<F> shift(const F& k, const Poly<F>& a, int n) {
    if (a.empty()) return a;
    Poly<F> r(static_cast<std::size_t>(n), k.zero());
    r.insert(r.end(), a.begin(), a.end());
    return r;
}

template <Field F>
Poly<F> mul(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<F> r(a.size() + b.size() - 1, k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (k.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    }
    trim(k, r);
    return r;
}

/// Euclidean division a = q*b + r.
template <Field F>
std::pair<Poly<F>, Poly<F>> divmod(const F& k, const Poly<F>& a, const Poly<F>& b) {
    if (b.empty()) throw std::domain_error("poly::divmod: division by zero polynomial");
    Poly<F> r = a;
    if (r.size() < b.size()) return {{}, r};
    Poly<F> q(r.size() - b.size() + 1, k.zero());
    auto lead_inv = k.inv(b.back());
    for (std::size_t i = r.size(); i-- >= b.size();) {
        auto c = k.mul(r[i], lead_inv);
        if (k.is_zero(c)) continue;
        std::size_t s = i + 1 - b.size();
        q[s] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[s + j] = k.sub(r[s + j], k.mul(c, b[j]));
    }
    trim(k, q);
    trim(k, r);
    return {q, r};
}

template <Field F>
Poly<F> rem(const F& k, const Poly<F>& a, const Poly<F>& b) {
    return divmod(k, a, b).second;
}

/// Exact quotient; throws if b does not divide a.
template <Field F>
Poly<F> exact_div(const F& k, const Poly<F>& a, const Poly<F>& b) {
    auto [q, r] = divmod(k, a, b);
    if (!r.empty()) throw std::logic_error("poly::exact_div: inexact division");
    return q;
}

template <Field F>
Poly<F> monic(const F& k, Poly<F> a) {
    if (a.empty()) return a;
    auto li = k.inv(a.back());
    return scale(k, li, std::move(a));
}

template <Field F>
Poly<F> gcd(const F& k, Poly<F> a, Poly<F> b) {
    while (!b.empty()) {
        auto r = rem(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(k, std::move(a));
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
template <Field F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const F& k, Poly<F> a, Poly<F> b) {
    Poly<F> s0 = constant(k, k.one()), s1, t0, t1 = constant(k, k.one());
    while (!b.empty()) {
        auto [q, r] = divmod(k, a, b);
        a = std::move(b);
        b = std::move(r);
        auto s2 = sub(k, s0, mul(k, q, s1));
        auto t2 = sub(k, t0, mul(k, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.empty()) return {a, s0, t0};
    auto li = k.inv(a.back());
    return {scale(k, li, a), scale(k, li, s0), scale(k, li, t0)};
}

template <Field F>
Poly<F> derivative(const F& k, const Poly<F>& a) {
    if (a.size() <= 1) return {};
    Poly<F> r(a.size() - 1, k.zero());
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = k.mul(k.from_int(static_cast<long long>(i)), a[i]);
    trim(k, r);
    return r;
}

template <Field F>
typename F::elem eval(const F& k, const Poly<F>& a, const typename F::elem& t) {
    auto r = k.zero();
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = k.add(k.mul(r, t), *it);
    return r;
}

/// a(t + c) as a polynomial in t.
template <Field F>
Poly<F> taylor_shift(const F& k, const Poly<F>& a, const typename F::elem& c) {
    Poly<F> r;
    Poly<F> lin{c, k.one()};
    trim(k, lin);
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = add(k, mul(k, r, lin), constant(k, *it));
    return r;
}

template <Field F>
Poly<F> mulmod(const F& k, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
    return rem(k, mul(k, a, b), m);
}

template <Field F>
Poly<F> powmod(const F& k, Poly<F> a, std::uint64_t e, const Poly<F>& m) {
    Poly<F> r = rem(k, constant(k, k.one()), m);
    a = rem(k, a, m);
    while (e > 0) {
        if (e & 1U) r = mulmod(k, r, a, m);
        e >>= 1U;
        if (e > 0) a = mulmod(k, a, a, m);
    }
    return r;
}

template <Field F>
Poly<F> pow(const F& k, const Poly<F>& a, unsigned e) {
    Poly<F> r = constant(k, k.one());
    for (unsigned i = 0; i < e; ++i) r = mul(k, r, a);
    return r;
}

/// Inverse of the Frobenius on coefficients for a polynomial in x^p.
template <Field F>
Poly<F> pth_root(const F& k, const Poly<F>& a) {
    const std::uint64_t p = k.characteristic();
    const std::uint64_t root_exp = k.size() / p;
    Poly<F> r;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i % p != 0) {
            if (!k.is_zero(a[i])) throw std::logic_error("poly::pth_root: not a p-th power");
            continue;
        }
        r.push_back(k.pow(a[i], root_exp));
    }
    trim(k, r);
    return r;
}

/// Square-free decomposition of a monic polynomial: f = prod g_i^{m_i}.
template <Field F>
std::vector<PolyFactor<F>> squarefree_factorization(const F& k, const Poly<F>& f_in) {
    std::vector<PolyFactor<F>> out;
    Poly<F> f = monic(k, f_in);
    if (deg(f) <= 0) return out;
    auto df = derivative(k, f);
    Poly<F> c = gcd(k, f, df);
    Poly<F> w = exact_div(k, f, c);
    int i = 1;
    while (!is_one(k, w)) {
        auto y = gcd(k, w, c);
        auto fac = exact_div(k, w, y);
        if (deg(fac) > 0) out.push_back({fac, i});
        w = y;
        c = exact_div(k, c, y);
        ++i;
    }
    if (!is_one(k, c)) {
        const int p = static_cast<int>(k.characteristic());
        for (auto& [g, m] : squarefree_factorization(k, pth_root(k, c))) out.push_back({g, m * p});
    }
    return out;
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs
/// (product of all irreducible factors of degree d, d).
template <Field F>
std::vector<PolyFactor<F>> distinct_degree_factorization(const F& k, Poly<F> f) {
    std::vector<PolyFactor<F>> out;
    const std::uint64_t q = k.size();
    Poly<F> h = x(k);
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = powmod(k, h, q, f);
        auto g = gcd(k, f, sub(k, h, x(k)));
        if (!is_one(k, g)) {
            out.push_back({g, d});
            f = exact_div(k, f, g);
            h = rem(k, h, f);
        }
    }
    if (deg(f) > 0) out.push_back({f, deg(f)});
    return out;
}

template <Field F>
Poly<F> random_poly(const F& k, int n, std::mt19937_64& rng) {
    Poly<F> r(static_cast<std::size_t>(n), k.zero());
    for (auto& c : r) c = k.random(rng);
    trim(k, r);
    return r;
}

/// Splits a monic square-free f whose irreducible factors all have degree d.
template <Field F>
std::vector<Poly<F>> equal_degree_factorization(const F& k, const Poly<F>& f, int d, std::mt19937_64& rng) {
    if (deg(f) == d) return {f};
    const std::uint64_t q = k.size();
    const bool char2 = k.characteristic() == 2;
    for (;;) {
        auto a = random_poly(k, deg(f), rng);
        if (deg(a) <= 0) continue;
        Poly<F> g = gcd(k, a, f);
        if (is_one(k, g)) {
            Poly<F> b;
            if (char2) {
                // Absolute trace to F_2 over F_{q^d}.
                int bits = 0;
                for (std::uint64_t t = q; t > 1; t >>= 1U) ++bits;
                Poly<F> s = rem(k, a, f), acc = s;
                for (int i = 1; i < bits * d; ++i) {
                    s = mulmod(k, s, s, f);
                    acc = add(k, acc, s);
                }
                b = acc;
            } else {
                // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
                Poly<F> s = rem(k, a, f), acc = s;
                for (int i = 1; i < d; ++i) {
                    s = powmod(k, s, q, f);
                    acc = mulmod(k, acc, s, f);
                }
                b = sub(k, powmod(k, acc, (q - 1) / 2, f), constant(k, k.one()));
            }
            g = gcd(k, b, f);
        }
        if (deg(g) > 0 && deg(g) < deg(f)) {
            auto left = equal_degree_factorization(k, g, d, rng);
            auto right = equal_degree_factorization(k, exact_div(k, f, g), d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

/// Complete factorization into monic irreducibles, sorted by degree and
/// then coefficients.  The leading coefficient is dropped.
template <Field F>
std::vector<PolyFactor<F>> factor(const F& k, const Poly<F>& f, std::mt19937_64& rng) {
    if (f.empty()) throw std::domain_error("poly::factor: zero polynomial");
    std::vector<PolyFactor<F>> out;
    for (auto& [sqf, mult] : squarefree_factorization(k, f)) {
        for (auto& [part, d] : distinct_degree_factorization(k, sqf)) {
            for (auto& g : equal_degree_factorization(k, part, d, rng)) out.push_back({g, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor<F>& a, const PolyFactor<F>& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        return a.poly < b.poly;
    });
    return out;
}

template <Field F>
std::vector<PolyFactor<F>> factor(const F& k, const Poly<F>& f) {
    std::mt19937_64 rng(0x5eed);
    return factor(k, f, rng);
}

/// Rabin-style test via distinct-degree factorization.
template <Field F>
bool is_irreducible(const F& k, const Poly<F>& f) {
    if (deg(f) <= 0) return false;
    auto m = monic(k, f);
    if (!is_one(k, gcd(k, m, derivative(k, m)))) return false;
    auto ddf = distinct_degree_factorization(k, m);
    return ddf.size() == 1 && ddf[0].multiplicity == deg(m);
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Dense linear algebra over a field.

template <class F>
using Matrix = std::vector<std::vector<typename F::elem>>;

namespace linalg {

/// In-place reduced row echelon form; returns the pivot columns.
template <Field F>
std::vector<std::size_t> rref(const F& k, Matrix<F>& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t cols = a[0].size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t piv = row;
        while (piv < a.size() && k.is_zero(a[piv][c])) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        auto inv = k.inv(a[row][c]);
        for (auto& v : a[row]) v = k.mul(v, inv);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || k.is_zero(a[r][c])) continue;
            auto f = a[r][c];
            for (std::size_t j = 0; j < cols; ++j) a[r][j] = k.sub(a[r][j], k.mul(f, a[row][j]));
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

template <Field F>
std::size_t rank(const F& k, Matrix<F> a) {
    return rref(k, a).size();
}

/// Basis of the right null space {x : a x = 0}.
template <Field F>
Matrix<F> nullspace(const F& k, Matrix<F> a, std::size_t cols) {
    Matrix<F> basis;
    if (a.empty()) {
        for (std::size_t i = 0; i < cols; ++i) {
            std::vector<typename F::elem> e(cols, k.zero());
            e[i] = k.one();
            basis.push_back(std::move(e));
        }
        return basis;
    }
    auto pivots = rref(k, a);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::elem> v(cols, k.zero());
        v[free] = k.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(a[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace linalg

}  // namespace adelic
