#include "adelic/function_field.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace adelic {

FunctionField::FunctionField(std::uint64_t q) : k_(q) {}

RationalFunction FunctionField::make(FqPoly num, FqPoly den) const {
    poly::trim(k_, num);
    poly::trim(k_, den);
    if (den.empty()) throw std::domain_error("FunctionField: zero denominator");
    if (num.empty()) return {{}, {k_.one()}};
    auto g = poly::gcd(k_, num, den);
    if (poly::deg(g) > 0) {
        num = poly::exact_div(k_, num, g);
        den = poly::exact_div(k_, den, g);
    }
    auto li = k_.inv(den.back());
    return {poly::scale(k_, li, std::move(num)), poly::scale(k_, li, std::move(den))};
}

RationalFunction FunctionField::add(const RationalFunction& a, const RationalFunction& b) const {
    return make(poly::add(k_, poly::mul(k_, a.num, b.den), poly::mul(k_, b.num, a.den)), poly::mul(k_, a.den, b.den));
}

RationalFunction FunctionField::sub(const RationalFunction& a, const RationalFunction& b) const { return add(a, neg(b)); }

RationalFunction FunctionField::neg(const RationalFunction& a) const { return {poly::neg(k_, a.num), a.den}; }

RationalFunction FunctionField::mul(const RationalFunction& a, const RationalFunction& b) const {
    return make(poly::mul(k_, a.num, b.num), poly::mul(k_, a.den, b.den));
}

RationalFunction FunctionField::inv(const RationalFunction& a) const {
    if (is_zero(a)) throw std::domain_error("FunctionField: inverse of zero");
    return make(a.den, a.num);
}

PolyPlace FunctionField::place(FqPoly p) const {
    poly::trim(k_, p);
    if (poly::deg(p) < 1) throw std::invalid_argument("FunctionField: place polynomial must have positive degree");
    p = poly::monic(k_, std::move(p));
    if (!poly::is_irreducible(k_, p)) throw std::invalid_argument("FunctionField: place polynomial " + to_string(p) + " is reducible");
    return PolyPlace{p};
}

int FunctionField::valuation(const FqPoly& a, const PolyPlace& P) const {
    if (a.empty()) throw std::domain_error("valuation of zero");
    int v = 0;
    FqPoly r = a;
    for (;;) {
        auto [q, rem] = poly::divmod(k_, r, P.poly);
        if (!rem.empty()) return v;
        r = std::move(q);
        ++v;
    }
}

int FunctionField::valuation(const RationalFunction& f, const PolyPlace& P) const {
    return valuation(f.num, P) - valuation(f.den, P);
}

int FunctionField::valuation(const RationalFunction& f, const InfinitePlace&) const {
    if (is_zero(f)) throw std::domain_error("valuation of zero");
    return poly::deg(f.den) - poly::deg(f.num);
}

std::vector<PolyPlace> FunctionField::finite_support(const RationalFunction& f) const {
    if (is_zero(f)) throw std::domain_error("support of zero");
    std::set<PolyPlace> out;
    for (const auto* p : {&f.num, &f.den}) {
        if (poly::deg(*p) < 1) continue;
        for (auto& fac : poly::factor(k_, *p)) out.insert(PolyPlace{fac.poly});
    }
    return {out.begin(), out.end()};
}

RationalFunction FunctionField::random(std::mt19937_64& rng, int height) const {
    for (;;) {
        auto num = poly::random_poly(k_, height + 1, rng);
        auto den = poly::random_poly(k_, height + 1, rng);
        if (num.empty() || den.empty()) continue;
        return make(num, den);
    }
}

std::vector<PolyPlace> FunctionField::places_of_degree(int d) const {
    std::vector<PolyPlace> out;
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= k_.size();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        FqPoly p(static_cast<std::size_t>(d) + 1, k_.zero());
        std::uint64_t r = idx;
        for (int i = 0; i < d; ++i) {
            p[static_cast<std::size_t>(i)] = k_.element(r % k_.size());
            r /= k_.size();
        }
        p.back() = k_.one();
        if (poly::is_irreducible(k_, p)) out.push_back(PolyPlace{p});
    }
    return out;
}

LaurentSeries series_quotient(const LocalField& L, Poly<LocalField> a, Poly<LocalField> b, int max_exp) {
    poly::trim(L, a);
    poly::trim(L, b);
    if (b.empty()) throw std::domain_error("series_quotient: zero denominator");
    LaurentSeries out;
    if (a.empty()) {
        out.start = max_exp;
        return out;
    }
    int va = 0, vb = 0;
    while (L.is_zero(a[static_cast<std::size_t>(va)])) ++va;
    while (L.is_zero(b[static_cast<std::size_t>(vb)])) ++vb;
    a.erase(a.begin(), a.begin() + va);
    b.erase(b.begin(), b.begin() + vb);
    out.start = va - vb;
    const int n = max_exp - out.start;
    if (n <= 0) return out;
    auto b0_inv = L.inv(b[0]);
    out.c.resize(static_cast<std::size_t>(n), L.zero());
    for (int i = 0; i < n; ++i) {
        auto acc = i < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(i)] : L.zero();
        for (int j = 1; j <= i && j < static_cast<int>(b.size()); ++j)
            acc = L.sub(acc, L.mul(b[static_cast<std::size_t>(j)], out.c[static_cast<std::size_t>(i - j)]));
        out.c[static_cast<std::size_t>(i)] = L.mul(acc, b0_inv);
    }
    return out;
}

LaurentSeries FunctionField::expand(const LocalField& L, const RationalFunction& f, const PolyPlace& P, int max_exp) const {
    if (L.modulus() != P.poly) throw std::invalid_argument("expand: residue field does not match the place");
    auto alpha = L.gen();
    auto a = poly::taylor_shift(L, L.lift(f.num), alpha);
    auto b = poly::taylor_shift(L, L.lift(f.den), alpha);
    return series_quotient(L, std::move(a), std::move(b), max_exp);
}

LaurentSeries FunctionField::expand(const LocalField& L, const RationalFunction& f, const InfinitePlace&, int max_exp) const {
    if (L.degree() != 1) throw std::invalid_argument("expand: residue field at infinity must be the constants");
    // f(1/u) = u^(deg den - deg num) * rev(num) / rev(den).
    if (is_zero(f)) return series_quotient(L, {}, {L.one()}, max_exp);
    auto rn = L.lift(FqPoly(f.num.rbegin(), f.num.rend()));
    auto rd = L.lift(FqPoly(f.den.rbegin(), f.den.rend()));
    const int shift = poly::deg(f.den) - poly::deg(f.num);
    auto s = series_quotient(L, std::move(rn), std::move(rd), max_exp - shift);
    s.start += shift;
    return s;
}

std::string FunctionField::to_string(const FqPoly& p) const {
    if (p.empty()) return "0";
    std::string out;
    for (int i = poly::deg(p); i >= 0; --i) {
        auto c = p[static_cast<std::size_t>(i)];
        if (k_.is_zero(c)) continue;
        if (!out.empty()) out += " + ";
        std::string cs = k_.to_string(c);
        if (i == 0)
            out += cs;
        else {
            if (c != k_.one()) out += cs + "*";
            out += i == 1 ? "t" : "t^" + std::to_string(i);
        }
    }
    return out;
}

std::string FunctionField::to_string(const RationalFunction& f) const {
    if (poly::is_one(k_, f.den)) return to_string(f.num);
    return "(" + to_string(f.num) + ")/(" + to_string(f.den) + ")";
}

}  // namespace adelic
