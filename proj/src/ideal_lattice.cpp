#include "adelic/ideal_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adelic {

namespace {

using ZRow = std::vector<mpz_class>;

ZRow reduce_mul(const NumberField& K, const ZRow& a, const ZRow& b) {
    ZPoly p = zpoly::rem_monic(zpoly::mul(ZPoly(a.begin(), a.end()), ZPoly(b.begin(), b.end())), K.min_poly());
    p.resize(static_cast<std::size_t>(K.degree()));
    return p;
}

ZRow basis_vector(const NumberField& K, std::size_t i) {
    ZRow r(static_cast<std::size_t>(K.degree()));
    r[i] = 1;
    return r;
}

FractionalIdeal make_ideal(std::vector<ZRow> gens, mpz_class den, std::size_t n) {
    FractionalIdeal I;
    I.rows = hermite_normal_form(std::move(gens), n);
    mpz_class g = den;
    for (const auto& r : I.rows)
        for (const auto& c : r) g = gcd(g, c);
    if (g != 1) {
        for (auto& r : I.rows)
            for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
    I.den = den;
    return I;
}

// Generators of the O-module generated by the given elements.
std::vector<ZRow> o_span(const NumberField& K, const std::vector<ZRow>& elems) {
    std::vector<ZRow> gens;
    const auto n = static_cast<std::size_t>(K.degree());
    for (const auto& e : elems)
        for (std::size_t i = 0; i < n; ++i) gens.push_back(reduce_mul(K, e, basis_vector(K, i)));
    return gens;
}

long double theta_plus(long double a) {
    long double geometric = 2 * std::exp(-a) / (1 - std::exp(-a));
    long double integral = std::sqrt(std::numbers::pi_v<long double> / a);
    return 1 + std::min(geometric, integral);
}

}  // namespace

std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> a, std::size_t n) {
    std::size_t row = 0;
    for (std::size_t c = 0; c < n; ++c) {
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t r = row; r < a.size(); ++r)
                if (a[r][c] != 0 && (best == a.size() || abs(a[r][c]) < abs(a[best][c]))) best = r;
            if (best == a.size()) throw std::invalid_argument("hermite_normal_form: lattice is not of full rank");
            std::swap(a[row], a[best]);
            bool done = true;
            for (std::size_t r = row + 1; r < a.size(); ++r) {
                if (a[r][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
                for (std::size_t j = c; j < n; ++j) a[r][j] -= q * a[row][j];
                if (a[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[row][c] < 0)
            for (auto& x : a[row]) x = -x;
        for (std::size_t r = 0; r < row; ++r) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
            for (std::size_t j = c; j < n; ++j) a[r][j] -= q * a[row][j];
        }
        ++row;
    }
    a.resize(n);
    return a;
}

FractionalIdeal unit_ideal(const NumberField& K) {
    const auto n = static_cast<std::size_t>(K.degree());
    std::vector<ZRow> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(basis_vector(K, i));
    return make_ideal(gens, 1, n);
}

FractionalIdeal ideal_product(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b) {
    std::vector<ZRow> gens;
    for (const auto& x : a.rows)
        for (const auto& y : b.rows) gens.push_back(reduce_mul(K, x, y));
    return make_ideal(std::move(gens), a.den * b.den, static_cast<std::size_t>(K.degree()));
}

FractionalIdeal prime_ideal(const NumberField& K, const PrimePlace& P) {
    const auto n = static_cast<std::size_t>(K.degree());
    ZRow p(n);
    p[0] = P.p;
    ZPoly lifted;
    for (auto c : P.factor) lifted.emplace_back(static_cast<unsigned long>(c));
    ZRow g = zpoly::rem_monic(lifted, K.min_poly());
    g.resize(n);
    return make_ideal(o_span(K, {p, g}), 1, n);
}

FractionalIdeal inverse_prime_ideal(const NumberField& K, const PrimePlace& P) {
    const auto n = static_cast<std::size_t>(K.degree());
    ZRow beta(n);
    for (std::size_t i = 0; i < P.beta.size(); ++i) beta[i] = P.beta[i];
    // Scale the unit ideal by p so everything is integral; the denominator is p.
    ZRow pe = basis_vector(K, 0);
    pe[0] = P.p;
    return make_ideal(o_span(K, {pe, beta}), P.p, n);
}

mpq_class ideal_norm(const FractionalIdeal& I) {
    mpz_class det = 1;
    for (std::size_t i = 0; i < I.rows.size(); ++i) det *= I.rows[i][i];
    mpz_class d;
    mpz_pow_ui(d.get_mpz_t(), I.den.get_mpz_t(), static_cast<unsigned long>(I.rows.size()));
    mpq_class r(abs(det), d);
    r.canonicalize();
    return r;
}

IdealLattice ideal_lattice(const GlobalField& K, const RepleteDivisor& D) {
    const auto& nf = K.nf();
    const auto n = static_cast<std::size_t>(nf.degree());
    IdealLattice L;
    L.ideal = unit_ideal(nf);
    for (const auto& [v, c] : D.finite) {
        const auto* P = std::get_if<PrimePlace>(&v);
        if (P == nullptr) throw std::invalid_argument("ideal_lattice: divisor place is not a prime of this field");
        K.check_place(v);
        // {v(u) >= -c}: c copies of P^{-1}, or -c copies of P.
        FractionalIdeal step = c > 0 ? inverse_prime_ideal(nf, *P) : prime_ideal(nf, *P);
        for (long i = 0; i < std::abs(c); ++i) L.ideal = ideal_product(nf, L.ideal, step);
    }
    for (const auto& row : L.ideal.rows) {
        std::vector<mpq_class> b(n);
        for (std::size_t j = 0; j < n; ++j) {
            b[j] = mpq_class(row[j], L.ideal.den);
            b[j].canonicalize();
        }
        L.basis.push_back(std::move(b));
    }

    const auto pi = std::numbers::pi_v<long double>;
    const int r1 = nf.r1(), r2 = nf.r2();
    std::vector<long double> scale_real(static_cast<std::size_t>(r1)), scale_complex(static_cast<std::size_t>(r2));
    for (const auto& [v, t] : D.arch) {
        K.check_place(v);
        if (const auto* r = std::get_if<RealPlace>(&v))
            scale_real[static_cast<std::size_t>(r->index)] = t;
        else
            scale_complex[static_cast<std::size_t>(std::get<ComplexPlace>(v).index)] = t;
    }
    for (auto t : scale_real) L.scalings.push_back(std::exp(t));
    for (auto t : scale_complex) L.scalings.push_back(std::exp(t));

    for (const auto& b : L.basis) {
        std::vector<long double> row;
        for (int j = 0; j < r1; ++j) {
            auto z = qpoly::eval(b, nf.roots()[static_cast<std::size_t>(j)]);
            row.push_back(std::sqrt(pi) * std::exp(-scale_real[static_cast<std::size_t>(j)]) * z.real());
        }
        for (int j = 0; j < r2; ++j) {
            auto z = qpoly::eval(b, nf.roots()[static_cast<std::size_t>(r1 + j)]);
            long double s = std::sqrt(2 * pi * std::exp(-scale_complex[static_cast<std::size_t>(j)]));
            row.push_back(s * z.real());
            row.push_back(s * z.imag());
        }
        L.embedding.push_back(std::move(row));
    }
    L.gram.assign(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) L.gram[i][j] += L.embedding[i][k] * L.embedding[j][k];
    return L;
}

RealMatrix lll_reduce(RealMatrix b) {
    const std::size_t n = b.size();
    if (n == 0) return b;
    const std::size_t dim = b[0].size();
    auto dot = [&](const std::vector<long double>& x, const std::vector<long double>& y) {
        long double s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += x[i] * y[i];
        return s;
    };
    RealMatrix bs(n);
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    std::vector<long double> norm2(n);
    auto gso = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            bs[i] = b[i];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(b[i], bs[j]) / norm2[j];
                for (std::size_t k = 0; k < dim; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
            }
            norm2[i] = dot(bs[i], bs[i]);
            if (!(norm2[i] > 0)) throw std::runtime_error("lll_reduce: degenerate basis");
        }
    };
    gso();
    std::size_t k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 100000) throw std::runtime_error("lll_reduce: no convergence");
        for (std::size_t j = k; j-- > 0;) {
            long double r = std::round(mu[k][j]);
            if (r != 0) {
                for (std::size_t i = 0; i < dim; ++i) b[k][i] -= r * b[j][i];
                gso();
            }
        }
        if (norm2[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

ThetaResult theta_sum(const RealMatrix& basis_in, const ThetaParams& params) {
    if (!(params.tol > 0 && params.tol < 1)) throw std::invalid_argument("theta_sum: tol must lie in (0, 1)");
    const RealMatrix b = lll_reduce(basis_in);
    const std::size_t n = b.size();
    // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
    RealMatrix g(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < b[i].size(); ++k) g[i][j] += b[i][k] * b[j][k];
    RealMatrix q = g;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(q[i][i] > 0)) throw std::runtime_error("theta_sum: Gram matrix is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }

    long double log_prod = 0;
    for (std::size_t i = 0; i < n; ++i) log_prod += std::log(theta_plus(q[i][i] / 2));

    ThetaResult res;
    long double r2 = 2 * (log_prod - std::log(static_cast<long double>(params.tol)));
    for (int shell = 1; shell <= params.max_shells; ++shell) {
        long double sum = 0;
        long points = 0;
        // Fincke-Pohst enumeration of Q(x) <= r2.
        std::vector<long> x(n, 0);
        std::vector<long double> center(n, 0), partial(n + 1, 0);
        std::vector<long> upper(n, 0);
        std::size_t i = n - 1;
        auto init_level = [&](std::size_t lvl) {
            long double c = 0;
            for (std::size_t j = lvl + 1; j < n; ++j) c -= q[lvl][j] * static_cast<long double>(x[j]);
            center[lvl] = c;
            long double room = (r2 - partial[lvl + 1]) / q[lvl][lvl];
            long double w = room > 0 ? std::sqrt(room) : -1;
            if (w < 0) {
                x[lvl] = 1;
                upper[lvl] = 0;
                return;
            }
            x[lvl] = static_cast<long>(std::ceil(c - w));
            upper[lvl] = static_cast<long>(std::floor(c + w));
        };
        init_level(i);
        for (;;) {
            if (x[i] > upper[i]) {
                if (i == n - 1) break;
                ++i;
                ++x[i];
                continue;
            }
            long double d = static_cast<long double>(x[i]) - center[i];
            partial[i] = partial[i + 1] + q[i][i] * d * d;
            if (i == 0) {
                if (partial[0] <= r2) {
                    sum += std::exp(-partial[0]);
                    if (++points > params.max_points) throw std::runtime_error("theta_sum: enumeration exceeded the point budget");
                }
                ++x[0];
            } else {
                --i;
                init_level(i);
            }
        }
        long double tail = std::exp(-r2 / 2 + log_prod);
        res = ThetaResult{sum, std::log(sum), points, r2, tail, shell};
        if (tail < static_cast<long double>(params.tol) * sum) return res;
        r2 = r2 * 1.25L + 4;
    }
    throw std::runtime_error("theta_sum: max_shells exceeded before the tail bound met the tolerance");
}

}  // namespace adelic
