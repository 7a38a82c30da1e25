#include "adelic/integer_poly.hpp"

#include <stdexcept>

namespace adelic {

namespace zpoly {

void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

ZPoly derivative(const ZPoly& a) {
    if (a.size() <= 1) return {};
    ZPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<unsigned long>(i);
    trim(r);
    return r;
}

ZPoly rem_monic(const ZPoly& a, const ZPoly& f) {
    if (f.empty() || f.back() != 1) throw std::invalid_argument("rem_monic: modulus not monic");
    ZPoly r = a;
    trim(r);
    const std::size_t n = f.size() - 1;
    while (r.size() > n) {
        mpz_class c = r.back();
        std::size_t s = r.size() - 1 - n;
        for (std::size_t j = 0; j <= n; ++j) r[s + j] -= c * f[j];
        trim(r);
    }
    return r;
}

mpz_class resultant(const ZPoly& a_in, const ZPoly& b_in) {
    ZPoly a = a_in, b = b_in;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    const int m = deg(a), n = deg(b);
    if (m == 0 && n == 0) return 1;
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), a[0].get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size));
    // Rows hold coefficients from the leading one down.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b[static_cast<std::size_t>(n - j)];

    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (s[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < size && s[piv][k] == 0) ++piv;
            if (piv == size) return 0;
            std::swap(s[k], s[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j) {
                s[i][j] = s[k][k] * s[i][j] - s[i][k] * s[k][j];
                mpz_divexact(s[i][j].get_mpz_t(), s[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            s[i][k] = 0;
        }
        prev = s[k][k];
    }
    return sign * s[size - 1][size - 1];
}

mpz_class discriminant(const ZPoly& f) {
    const int n = deg(f);
    if (n < 1) throw std::invalid_argument("discriminant: degree must be positive");
    if (n == 1) return 1;
    mpz_class r = resultant(f, derivative(f));
    return ((n * (n - 1) / 2) % 2 == 0) ? r : mpz_class(-r);
}

std::complex<long double> eval(const ZPoly& a, std::complex<long double> z) {
    std::complex<long double> r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * z + static_cast<long double>(it->get_d());
    return r;
}

}  // namespace zpoly

namespace qpoly {

void trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b_in) {
    QPoly b = b_in;
    trim(b);
    if (b.empty()) throw std::domain_error("qpoly::divmod: division by zero");
    QPoly r = a;
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    QPoly q(r.size() - b.size() + 1);
    while (r.size() >= b.size()) {
        mpq_class c = r.back() / b.back();
        std::size_t s = r.size() - b.size();
        q[s] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[s + j] -= c * b[j];
        r.pop_back();
        trim(r);
    }
    trim(q);
    return {q, r};
}

std::pair<QPoly, QPoly> gcd_cofactor(const QPoly& a_in, const QPoly& b_in) {
    QPoly a = a_in, b = b_in;
    trim(a);
    trim(b);
    QPoly s0{mpq_class(1)}, s1;
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
        QPoly qs = mul(q, s1);
        QPoly s2(std::max(s0.size(), qs.size()));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        trim(s2);
        s0 = s1;
        s1 = s2;
    }
    if (a.empty()) return {a, s0};
    mpq_class li = 1 / a.back();
    for (auto& c : a) c *= li;
    for (auto& c : s0) c *= li;
    return {a, s0};
}

std::complex<long double> eval(const QPoly& a, std::complex<long double> z) {
    std::complex<long double> r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        long double c = static_cast<long double>(it->get_num().get_d()) / static_cast<long double>(it->get_den().get_d());
        r = r * z + c;
    }
    return r;
}

std::pair<ZPoly, mpz_class> clear_denominators(const QPoly& a) {
    mpz_class d = 1;
    for (const auto& c : a) d = lcm(d, mpz_class(c.get_den()));
    ZPoly p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpq_class v = a[i] * d;
        p[i] = v.get_num();
    }
    zpoly::trim(p);
    return {p, d};
}

}  // namespace qpoly

std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n_in) {
    if (n_in == 0) throw std::domain_error("factor_integer: zero");
    mpz_class n = abs(n_in);
    std::vector<std::pair<mpz_class, int>> out;
    for (unsigned long d = 2; d < 1000000 && mpz_class(d) * d <= n; ++d) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), d) == 0) continue;
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
            ++e;
        }
        out.emplace_back(mpz_class(d), e);
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw std::runtime_error("factor_integer: cofactor " + n.get_str() + " not factored by trial division");
        out.emplace_back(n, 1);
    }
    return out;
}

int valuation(mpz_class n, const mpz_class& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

}  // namespace adelic
