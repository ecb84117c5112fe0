#include "hdensity/errors.hpp"
#include "hdensity/integers.hpp"

#include <doctest.h>

#include <numeric>

using namespace hdensity;
using namespace hdensity::integers;

namespace {

// No d >= 2 with d^r | g. Checking composite d too is harmless.
bool power_free_by_trial(std::int64_t g, int r) {
    if (g == 0) return false;
    const std::int64_t a = g < 0 ? -g : g;
    for (std::int64_t d = 2; d <= a; ++d) {
        std::int64_t dr = 1;
        bool overflow = false;
        for (int i = 0; i < r; ++i) {
            dr *= d;
            if (dr > a) {
                overflow = true;
                break;
            }
        }
        if (!overflow && a % dr == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("prime places") {
    CHECK(primes_up_to_list(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(primes_up_to_list(2) == std::vector<std::uint64_t>{2});
    CHECK(primes_up_to_list(30).size() == 10);
    CHECK(primes_up_to_list(1000000).size() == 78498);
    const auto places = primes_up_to(7);
    REQUIRE(places.size() == 4);
    CHECK(places[3].norm == 7);
    CHECK(places[3].cutoff_key() == 7);
    CHECK_THROWS_AS(primes_up_to(1), InputError);
}

TEST_CASE("r-power-free integers") {
    CHECK(is_r_power_free(6, 2));
    CHECK_FALSE(is_r_power_free(12, 2));
    CHECK_FALSE(is_r_power_free(0, 3));
    CHECK(is_r_power_free(-1, 1));
    CHECK_FALSE(is_r_power_free(7, 1));
    CHECK(is_r_power_free(4, 3));
    CHECK_FALSE(is_r_power_free(-8, 3));
    for (std::int64_t g = -300; g <= 300; ++g)
        for (int r = 1; r <= 3; ++r) CHECK(is_r_power_free(g, r) == power_free_by_trial(g, r));
}

TEST_CASE("H-wise r-prime tuples") {
    const Hypergraph k2 = complete_uniform(2, 2);
    const std::vector<std::int64_t> a{4, 9}, b{6, 10}, c{12, 18};
    CHECK(is_h_wise_r_prime(a, k2, 1));
    CHECK_FALSE(is_h_wise_r_prime(b, k2, 1));
    CHECK(is_h_wise_r_prime(c, k2, 2));
    const std::vector<std::int64_t> zeros{0, 0, 0};
    CHECK(is_h_wise_r_prime(zeros, edgeless(3, 2), 1));
    CHECK_THROWS_AS(is_h_wise_r_prime(zeros, k2, 1), InputError);
    // path 0-1-2 only constrains adjacent pairs
    const std::vector<std::int64_t> d{2, 3, 4};
    CHECK(is_h_wise_r_prime(d, path_graph(3), 1));
    CHECK_FALSE(is_h_wise_r_prime(d, complete_uniform(3, 2), 1));
    CHECK(is_h_wise_r_prime(d, complete_uniform(3, 3), 1));
    // against gcd + trial division
    const Hypergraph tri = complete_uniform(3, 2);
    for (std::int64_t x = -6; x <= 6; ++x)
        for (std::int64_t y = -6; y <= 6; ++y)
            for (std::int64_t z = -6; z <= 6; ++z) {
                const std::vector<std::int64_t> t{x, y, z};
                bool expect = true;
                for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}})
                    expect = expect && power_free_by_trial(std::gcd(t[i], t[j]), 2);
                CHECK(is_h_wise_r_prime(t, tri, 2) == expect);
            }
}

TEST_CASE("gcd") {
    const std::vector<std::int64_t> xs{-12, 18, 30};
    CHECK(gcd_of(xs) == 6);
    CHECK(gcd_of(std::span<const std::int64_t>{}) == 0);
}

TEST_CASE("integer boxes") {
    CHECK(IntBox{2, IntBox::Mode::symmetric}.elements() == std::vector<std::int64_t>{-2, -1, 0, 1});
    CHECK(IntBox{3, IntBox::Mode::classical}.elements() == std::vector<std::int64_t>{1, 2, 3});
    CHECK(IntBox{1, IntBox::Mode::symmetric}.elements() == std::vector<std::int64_t>{-1, 0});
    CHECK_THROWS_AS(IntBox{0}.size(), InputError);
}
