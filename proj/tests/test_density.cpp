#include "hdensity/density.hpp"
#include "hdensity/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace hdensity;

namespace {

IndepProfile profile_of(std::vector<std::uint64_t> c) { return IndepProfile{std::move(c)}; }

Place z_place(std::uint64_t p) { return {RingKind::integers, BigInt(p), 1, RationalPrimePlace{p}}; }

// sum_k i_k (1-x)^(m-k) x^k straight from the definition.
Rational graph_factor(const IndepProfile& p, const Rational& x) {
    Rational s = 0;
    for (int k = 0; k <= p.m(); ++k) {
        Rational t = Rational(static_cast<unsigned long>(p[k]));
        for (int a = 0; a < p.m() - k; ++a) t *= 1 - x;
        for (int a = 0; a < k; ++a) t *= x;
        s += t;
    }
    return s;
}

}  // namespace

TEST_CASE("local factor examples") {
    const auto k2 = profile_of({1, 2, 0});
    CHECK(local_factor(k2, Rational(1, 4)) == Rational(15, 16));
    CHECK(local_factor(profile_of({1, 3, 3, 1}), Rational(2, 7)) == 1);
    CHECK(local_factor(profile_of({1, 3, 1, 0}), Rational(0)) == 1);
    CHECK_THROWS_AS(local_factor(k2, Rational(3, 2)), InputError);
    CHECK_THROWS_AS(local_factor(k2, Rational(-1, 2)), InputError);
}

TEST_CASE("closed form for complete uniform hypergraphs") {
    for (unsigned p : {2u, 3u, 5u, 7u})
        CHECK(local_factor_complete(2, 2, Rational(1, p)) == 1 - Rational(1, p * p));
    CHECK(local_factor_complete(2, 2, Rational(1)) == 0);
    for (int m = 2; m <= 6; ++m)
        for (unsigned d : {2u, 3u, 5u}) {
            const Rational x(1, d);
            CHECK(local_factor_complete(m, m, x) == 1 - pow(x, m));
            for (int j = 2; j <= m; ++j)
                CHECK(local_factor_complete(m, j, x) == local_factor(complete_profile(m, j), x));
        }
}

TEST_CASE("integer numerator matches the rational factor") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto p = independence_counts(oracle::random_hypergraph(rng, 8));
        for (unsigned n : {2u, 3u, 4u, 9u, 25u}) {
            const BigInt num = local_factor_numerator(p, BigInt(n));
            CHECK(make_rational(num, pow(BigInt(n), p.m())) == local_factor(p, Rational(1, n)));
        }
    }
}

TEST_CASE("Bernoulli-type lower bound") {
    std::mt19937_64 rng(5);
    const Rational xs[] = {Rational(0), Rational(1, 7), Rational(1, 3), Rational(1, 2), Rational(1)};
    for (int t = 0; t < 100; ++t) {
        const auto p = independence_counts(oracle::random_hypergraph(rng, 8));
        for (const auto& x : xs) CHECK(local_factor(p, x) >= 1 - (p.m() - 1) * (p.m() - 1) * x * x);
    }
}

TEST_CASE("graph special case") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto p = independence_counts(oracle::random_graph(rng, 6));
        for (unsigned q : {2u, 3u, 5u, 7u}) CHECK(local_factor(p, Rational(1, q)) == graph_factor(p, Rational(1, q)));
    }
}

TEST_CASE("tail bounds") {
    CHECK(tail_bound_numberfield(2, 1, 1, 10) == Rational(1, 10));
    CHECK(tail_bound_numberfield(1, 3, 2, 50) == 0);
    CHECK(tail_bound_numberfield(3, 1, 2, 100) == Rational(2, 25));
    CHECK(tail_bound_numberfield(2, 2, 1, 10) == Rational(1, 3000));
    CHECK(tail_bound_fqx(2, 1, 2, 10) == Rational(1, 1024));
    CHECK(tail_bound_fqx(1, 1, 5, 3) == 0);
    CHECK(tail_bound_fqx(3, 1, 3, 4) == Rational(2, 81));
    CHECK_THROWS_AS(tail_bound_fqx(2, 1, 1, 3), InputError);
    // sum_{10 < p < 10^4} p^-2 stays under the bound for P = 10
    double s = 0;
    for (unsigned p = 11; p < 10000; ++p) {
        bool prime = true;
        for (unsigned d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
        if (prime) s += 1.0 / (double(p) * p);
    }
    CHECK(s < 0.1);
}

TEST_CASE("euler product over a hand-built stream") {
    const ProblemSpec k2(complete_uniform(2, 2), 1);
    const std::vector<Place> places{z_place(2), z_place(3), z_place(5)};
    const auto iv = euler_product(k2, places, 5, Rational(1, 5));
    CHECK(iv.upper == Rational(3, 4) * Rational(8, 9) * Rational(24, 25));
    CHECK(iv.lower == iv.upper * Rational(4, 5));
    CHECK(iv.places_used == 3);
    CHECK_FALSE(iv.warning);

    const ProblemSpec empty(edgeless(3, 2), 2);
    const auto e = euler_product(empty, places, 7, Rational(1, 100));
    CHECK(e.upper == 1);
    CHECK(e.lower == Rational(99, 100));

    // grouped places raise the factor to the multiplicity
    const std::vector<Place> grouped{{RingKind::fqx, BigInt(4), 1, DegreeClass{1}},
                                     {RingKind::fqx, BigInt(16), 3, DegreeClass{2}}};
    const auto g = euler_product(k2, grouped, 2, Rational(0));
    CHECK(g.upper == Rational(15, 16) * pow(Rational(255, 256), 3));
}

TEST_CASE("place stream consistency") {
    const ProblemSpec k2(complete_uniform(2, 2), 1);
    const std::vector<Place> unordered{z_place(3), z_place(2)};
    CHECK_THROWS_AS(euler_product(k2, unordered, 10, 0), ConsistencyError);
    const std::vector<Place> dup{z_place(2), z_place(2)};
    CHECK_THROWS_AS(euler_product(k2, dup, 10, 0), ConsistencyError);
    const std::vector<Place> beyond{z_place(2), z_place(11)};
    CHECK_THROWS_AS(euler_product(k2, beyond, 10, 0), ConsistencyError);
    const std::vector<Place> mixed{z_place(2), {RingKind::gaussian, BigInt(9), 1, GaussianPlace{3, GaussianPlace::Kind::inert, 3, 0}}};
    CHECK_THROWS_AS(euler_product(k2, mixed, 10, 0), ConsistencyError);
    const std::vector<Place> huge{{RingKind::fqx, BigInt(2), 4'000'000'000ULL, DegreeClass{1}}};
    CHECK_THROWS_AS(euler_product(k2, huge, 1, 0), CapacityError);
}

TEST_CASE("problem spec") {
    CHECK_THROWS_AS(ProblemSpec(complete_uniform(2, 2), 0), InputError);
    const ProblemSpec s(path_graph(3), 2);
    CHECK(s.profile().counts == std::vector<std::uint64_t>{1, 3, 1, 0});
    CHECK_FALSE(s.divergent_regime());
    CHECK(ring_name(RingKind::gaussian) == "Zi");
}
