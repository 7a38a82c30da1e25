#include <doctest.h>

#include <cmath>
#include <random>

#include "adelic/field_core.hpp"
#include "helpers.hpp"

using namespace adelic;
using namespace testing_helpers;

TEST_CASE("number field construction") {
    auto K = gaussian();
    CHECK(K.nf().r1() == 0);
    CHECK(K.nf().r2() == 1);
    CHECK(K.nf().discriminant() == -4);
    auto S = sqrt2();
    CHECK(S.nf().r1() == 2);
    CHECK(S.nf().discriminant() == 8);
    CHECK(S.nf().roots()[0].real() == doctest::Approx(-std::sqrt(2.0)));
    auto E = eisenstein();
    CHECK(E.nf().discriminant() == -3);
    CHECK(E.nf().roots()[0].imag() > 0);

    CHECK_THROWS(GlobalField::number_field({-1, 0, 1}));
    CHECK_THROWS(GlobalField::number_field({4, 0, 0, 0, 1}));  // (x^2 - 2x + 2)(x^2 + 2x + 2)
    auto Q = GlobalField::number_field({5, 0, 0, 0, 1});     // x^4 + 5, irreducible by patterns
    CHECK(Q.nf().irreducibility_certified());
}

TEST_CASE("places above p") {
    auto K = gaussian();
    auto two = K.nf().places_above(2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].e == 2);
    CHECK(two[0].f == 1);
    CHECK_FALSE(two[0].order_level);
    auto five = K.nf().places_above(5);
    REQUIRE(five.size() == 2);
    CHECK(five[0].e == 1);
    auto three = K.nf().places_above(3);
    REQUIRE(three.size() == 1);
    CHECK(three[0].f == 2);

    // Z[sqrt(-3)] is not maximal at 2.
    auto N = GlobalField::number_field({3, 0, 1});
    CHECK(N.nf().places_above(2)[0].order_level);
}

TEST_CASE("valuations in Z[i]") {
    auto K = gaussian();
    auto P2 = prime(K, 2);
    CHECK(valuation(K, nf_elem(K, {2}), P2) == 2);
    CHECK(valuation(K, nf_elem(K, {1, 1}), P2) == 1);
    CHECK(valuation(K, nf_elem(K, {3, 1}), P2) == 1);
    // 2 + i and 2 - i sit at different places above 5.
    auto a = nf_elem(K, {2, 1});
    CHECK(valuation(K, a, prime(K, 5, 0)) + valuation(K, a, prime(K, 5, 1)) == 1);
    auto inv = field_inv(K, nf_elem(K, {1, 1}));
    CHECK(valuation(K, inv, P2) == -1);
}

TEST_CASE("module_at_place examples") {
    auto Q = GlobalField::rational();
    CHECK(module_at_place(Q, nf_elem(Q, {2}), prime(Q, 2)) == doctest::Approx(0.5));
    auto K = gaussian();
    CHECK(module_at_place(K, nf_elem(K, {1, 1}), ComplexPlace{0}) == doctest::Approx(2.0));
    auto F = GlobalField::function_field(2);
    CHECK(module_at_place(F, ff_elem(F, {0, 1}), InfinitePlace{}) == 2.0);
    CHECK(module_at_place(Q, nf_elem(Q, {}), prime(Q, 2)) == 0.0);
    CHECK_THROWS(module_at_place(Q, nf_elem(Q, {2}), InfinitePlace{}));
}

TEST_CASE("product_formula_defect examples") {
    auto Q = GlobalField::rational();
    CHECK(product_formula_defect(Q, nf_elem(Q, {2})) == doctest::Approx(1.0));
    auto F = GlobalField::function_field(3);
    CHECK(product_formula_defect(F, ff_elem(F, {1, 1}, {0, 1})) == 1.0);
    auto K = gaussian();
    CHECK(std::fabs(product_formula_defect(K, nf_elem(K, {3, 1})) - 1.0) < 1e-12);
    CHECK_THROWS(product_formula_defect(K, nf_elem(K, {})));
}

TEST_CASE("replete_divisor_of examples") {
    auto Q = GlobalField::rational();
    auto D = replete_divisor_of(Q, nf_elem(Q, {4}));
    CHECK(D.coeff(prime(Q, 2)) == -2);
    CHECK(D.arch_coeff(RealPlace{0}) == doctest::Approx(std::log(4.0)));
    CHECK(D.finite.size() == 1);

    auto F = GlobalField::function_field(5);
    auto E = replete_divisor_of(F, ff_elem(F, {0, 0, 1}));
    CHECK(E.coeff(poly_place(F, {0, 1})) == -2);
    CHECK(E.coeff(InfinitePlace{}) == 2);
    CHECK(E.finite.size() == 2);

    CHECK(replete_divisor_of(Q, nf_elem(Q, {1})) == RepleteDivisor{});
    CHECK(replete_divisor_of(F, ff_elem(F, {1})) == RepleteDivisor{});
}

TEST_CASE("log_module examples") {
    auto Q = GlobalField::rational();
    CHECK(std::fabs(log_module(Q, replete_divisor_of(Q, nf_elem(Q, {12})))) < 1e-12);
    auto F = GlobalField::function_field(2);
    CHECK(log_module(F, single_place(InfinitePlace{}, 3)) == doctest::Approx(3 * std::log(2.0)));
    CHECK(degree(F, single_place(InfinitePlace{}, 3)) == 3);
    CHECK(log_module(Q, single_place(prime(Q, 3), 1)) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("different_divisor") {
    auto Q = GlobalField::rational();
    CHECK(different_divisor(Q).finite.empty());
    CHECK(log_module(Q, different_divisor(Q)) == 0.0);

    for (std::uint64_t q : {2, 3, 4, 5}) {
        auto F = GlobalField::function_field(q);
        auto Kd = different_divisor(F);
        CHECK(Kd.coeff(InfinitePlace{}) == -2);
        CHECK(log_module(F, Kd) == doctest::Approx(-2 * std::log(static_cast<double>(q))));
        CHECK(std::exp(log_abs_k(F)) == doctest::Approx(static_cast<double>(q * q)));
    }

    // f'(i) = 2i has valuation 2 at (1 + i); |k| = 1/|disc|.
    auto K = gaussian();
    auto Kd = different_divisor(K);
    CHECK(Kd.coeff(prime(K, 2)) == 2);
    CHECK(log_module(K, Kd) == doctest::Approx(std::log(4.0)));
    CHECK(std::exp(log_abs_k(K)) == doctest::Approx(0.25));
    CHECK(std::exp(log_abs_k(sqrt2())) == doctest::Approx(1.0 / 8));
    CHECK(std::exp(log_abs_k(eisenstein())) == doctest::Approx(1.0 / 3));
}

TEST_CASE("replete divisors are multiplicative and log_module additive") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (auto K : {GlobalField::rational(), gaussian(), sqrt2(), eisenstein()}) {
        const int n = K.nf().degree();
        for (int i = 0; i < 20; ++i) {
            std::vector<long> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
            for (auto& x : a) x = coef(rng);
            for (auto& x : b) x = coef(rng);
            auto x = nf_elem(K, a), y = nf_elem(K, b);
            if (is_zero(K, x) || is_zero(K, y)) continue;
            auto dxy = replete_divisor_of(K, field_mul(K, x, y));
            auto sum = replete_divisor_of(K, x) + replete_divisor_of(K, y);
            CHECK(dxy.finite == sum.finite);
            for (const auto& [v, t] : dxy.arch) CHECK(t == doctest::Approx(sum.arch_coeff(v)).epsilon(1e-12));
            CHECK(std::fabs(log_module(K, dxy)) < 1e-12);
            CHECK(log_module(K, dxy) == doctest::Approx(log_module(K, replete_divisor_of(K, x)) + log_module(K, replete_divisor_of(K, y))));
        }
    }
    for (std::uint64_t q : {2, 5, 9}) {
        auto F = GlobalField::function_field(q);
        for (int i = 0; i < 30; ++i) {
            auto x = F.ff().random(rng, 4), y = F.ff().random(rng, 4);
            auto dxy = replete_divisor_of(F, F.ff().mul(x, y));
            CHECK(dxy == replete_divisor_of(F, x) + replete_divisor_of(F, y));
            CHECK(degree(F, dxy) == 0);
            CHECK(product_formula_defect(F, x) == 1.0);
        }
    }
}
