#pragma once

#include "hdensity/hypergraph.hpp"
#include "hdensity/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace hdensity {

enum class RingKind { integers, gaussian, fqx };

std::string ring_name(RingKind kind);

// Hypergraph plus multiplicity exponent r. m and j come from the hypergraph.
class ProblemSpec {
public:
    ProblemSpec(Hypergraph h, int r);

    const Hypergraph& hypergraph() const noexcept { return h_; }
    const IndepProfile& profile() const noexcept { return profile_; }
    int r() const noexcept { return r_; }
    int m() const noexcept { return h_.m(); }
    int j() const noexcept { return h_.j(); }
    // Set when r*m < 2, where the products are not known to converge.
    bool divergent_regime() const noexcept { return static_cast<long>(r_) * m() < 2; }

private:
    Hypergraph h_;
    IndepProfile profile_;
    int r_;
};

// Descriptors identifying one place of the active ring.
struct RationalPrimePlace {
    std::uint64_t p;
    friend bool operator==(const RationalPrimePlace&, const RationalPrimePlace&) = default;
};
struct GaussianPlace {
    enum class Kind { ramified, split, inert };
    std::uint64_t p;
    Kind kind;
    std::int64_t re;  // normalized generator re + im*i
    std::int64_t im;
    friend bool operator==(const GaussianPlace&, const GaussianPlace&) = default;
};
struct DegreeClass {
    int degree;
    friend bool operator==(const DegreeClass&, const DegreeClass&) = default;
};

struct Place {
    RingKind ring;
    BigInt norm;                 // N(p) for number rings, q^deg for F_q[x]
    std::uint64_t multiplicity;  // identical places sharing this norm
    std::variant<RationalPrimePlace, GaussianPlace, DegreeClass> descriptor;

    // Rational prime below the place (number rings) or the degree (F_q[x]);
    // this is what truncation cutoffs bound.
    std::uint64_t cutoff_key() const;
    // Strictly increasing along a valid place stream.
    std::tuple<std::uint64_t, std::int64_t, std::int64_t> order_key() const;
};

struct DensityInterval {
    Rational lower;
    Rational upper;
    std::uint64_t cutoff = 0;
    Rational tail_bound;
    // Set when no rigorous tail bound applies; lower is then 0.
    std::optional<std::string> warning;
    std::size_t places_used = 0;
};

// sum_k i_k (1-x)^(m-k) x^k. Throws InputError unless 0 <= x <= 1.
Rational local_factor(const IndepProfile& profile, const Rational& x);

// Same as local_factor at x = 1/norm_power, returned as the integer
// numerator sum_k i_k (n-1)^(m-k); the denominator is n^m.
BigInt local_factor_numerator(const IndepProfile& profile, const BigInt& norm_power);

// Closed form for K_m^(j): sum_{k<j} C(m,k) (1-x)^(m-k) x^k.
Rational local_factor_complete(int m, int j, const Rational& x);

// n (m-1)^2 / ((2r-1) P^(2r-1)): bounds sum over p > P of n (m-1)^2 p^(-2r).
Rational tail_bound_numberfield(int m, int r, int field_degree, std::uint64_t prime_cutoff);

// (m-1)^2 / (q^t (q-1)): bounds the failure mass at irreducibles of degree > t.
Rational tail_bound_fqx(int m, int r, std::uint64_t q, int degree_cutoff);

// Truncated product over `places` with enclosure [upper (1 - tail), upper].
// `tail` is ignored (and lower set to 0 with a warning) in the divergent
// regime. Throws ConsistencyError for out-of-order, duplicated or
// beyond-cutoff places.
DensityInterval euler_product(const ProblemSpec& spec, std::span<const Place> places,
                              std::uint64_t cutoff, const Rational& tail);

}  // namespace hdensity
