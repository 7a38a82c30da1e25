#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "adelic/poly.hpp"

namespace adelic {

/// The finite extension F[x]/(modulus) of a finite field F.
///
/// Elements are coefficient vectors of fixed length degree().  The base
/// field object must outlive the extension.  A degree-one modulus x - c is
/// allowed and gives a copy of F whose generator is c.
template <Field F>
class ExtField {
public:
    using base_type = F;
    using base_elem = typename F::elem;
    using elem = std::vector<base_elem>;

    ExtField(const F& base, Poly<F> modulus) : base_(&base), mod_(poly::monic(base, std::move(modulus))) {
        if (poly::deg(mod_) < 1) throw std::invalid_argument("ExtField: modulus must have positive degree");
        std::uint64_t s = 1;
        for (int i = 0; i < degree(); ++i) {
            if (s > (std::uint64_t{1} << 62) / base.size()) {
                s = 0;
                break;
            }
            s *= base.size();
        }
        size_ = s;
    }

    const F& base() const { return *base_; }
    const Poly<F>& modulus() const { return mod_; }
    int degree() const { return poly::deg(mod_); }
    /// Number of elements, or 0 if it does not fit in 62 bits.
    std::uint64_t size() const { return size_; }
    std::uint32_t characteristic() const { return base_->characteristic(); }

    elem zero() const { return elem(static_cast<std::size_t>(degree()), base_->zero()); }
    elem one() const { return embed(base_->one()); }
    elem embed(const base_elem& c) const {
        auto r = zero();
        r[0] = c;
        return r;
    }
    /// The class of x.
    elem gen() const { return from_poly(poly::x(*base_)); }
    bool is_zero(const elem& a) const {
        for (const auto& c : a)
            if (!base_->is_zero(c)) return false;
        return true;
    }

    elem from_poly(const Poly<F>& p) const {
        auto r = poly::rem(*base_, p, mod_);
        r.resize(static_cast<std::size_t>(degree()), base_->zero());
        return r;
    }
    Poly<F> to_poly(const elem& a) const {
        Poly<F> p = a;
        poly::trim(*base_, p);
        return p;
    }

    elem add(const elem& a, const elem& b) const {
        elem r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = base_->add(a[i], b[i]);
        return r;
    }
    elem sub(const elem& a, const elem& b) const {
        elem r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = base_->sub(a[i], b[i]);
        return r;
    }
    elem neg(const elem& a) const {
        elem r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = base_->neg(a[i]);
        return r;
    }
    elem mul(const elem& a, const elem& b) const {
        return from_poly(poly::mul(*base_, to_poly(a), to_poly(b)));
    }
    elem inv(const elem& a) const {
        if (is_zero(a)) throw std::domain_error("ExtField: inverse of zero");
        auto [g, s, t] = poly::xgcd(*base_, to_poly(a), mod_);
        if (poly::deg(g) != 0) throw std::domain_error("ExtField: modulus is reducible");
        return from_poly(s);
    }
    elem pow(elem a, std::uint64_t e) const {
        elem r = one();
        while (e > 0) {
            if (e & 1U) r = mul(r, a);
            e >>= 1U;
            if (e > 0) a = mul(a, a);
        }
        return r;
    }
    elem from_int(long long n) const { return embed(base_->from_int(n)); }
    elem random(std::mt19937_64& rng) const {
        elem r(static_cast<std::size_t>(degree()));
        for (auto& c : r) c = base_->random(rng);
        return r;
    }

    /// Tr_{E/F}(a) = sum_i a^{|F|^i}.
    base_elem trace(const elem& a) const {
        elem t = zero(), s = a;
        for (int i = 0; i < degree(); ++i) {
            t = add(t, s);
            s = pow(s, base_->size());
        }
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!base_->is_zero(t[i])) throw std::logic_error("ExtField: trace not in base field");
        return t[0];
    }

    /// Maps a polynomial with base-field coefficients into E[y].
    Poly<ExtField> lift(const Poly<F>& p) const {
        Poly<ExtField> r;
        r.reserve(p.size());
        for (const auto& c : p) r.push_back(embed(c));
        poly::trim(*this, r);
        return r;
    }

private:
    const F* base_;
    Poly<F> mod_;
    std::uint64_t size_ = 0;
};

}  // namespace adelic
