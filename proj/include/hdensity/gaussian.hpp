#pragma once

#include "hdensity/density.hpp"
#include "hdensity/hypergraph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Gaussian integer backend Z[i].
namespace hdensity::gaussian {

struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    constexpr GaussianInt() = default;
    constexpr GaussianInt(std::int64_t a, std::int64_t b = 0) : re(a), im(b) {}

    constexpr std::int64_t norm() const { return re * re + im * im; }
    constexpr GaussianInt conj() const { return {re, -im}; }
    constexpr bool is_zero() const { return re == 0 && im == 0; }

    friend constexpr GaussianInt operator+(GaussianInt x, GaussianInt y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend constexpr GaussianInt operator-(GaussianInt x, GaussianInt y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend constexpr GaussianInt operator-(GaussianInt x) { return {-x.re, -x.im}; }
    friend constexpr GaussianInt operator*(GaussianInt x, GaussianInt y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend constexpr bool operator==(GaussianInt, GaussianInt) = default;
};

struct DivMod {
    GaussianInt quotient;
    GaussianInt remainder;  // N(remainder) <= N(divisor) / 2
};

// Nearest-quotient Euclidean division. Throws DomainError on zero divisor.
DivMod divmod(GaussianInt x, GaussianInt y);
bool divides(GaussianInt d, GaussianInt x);

// Unique associate with re > 0, im >= 0 (or 0).
GaussianInt normalize(GaussianInt x);

// Normalized generator of the ideal generated by xs.
GaussianInt gaussian_gcd(std::span<const GaussianInt> xs);
GaussianInt gaussian_gcd(GaussianInt x, GaussianInt y);

struct Splitting {
    std::uint64_t p;
    GaussianPlace::Kind kind;
    std::vector<GaussianInt> primes;   // normalized generators of the places above p
    std::vector<int> inertial_degrees;  // f for each place
    int ramification = 1;               // e (2 only for p = 2)

    int total_inertial_degree() const;  // D_p
    std::int64_t place_norm(std::size_t i) const;
};

// Splitting of an odd or even rational prime; p must be prime.
Splitting splitting(std::uint64_t p);

// Places above every rational prime p <= limit, ascending by (p, generator).
std::vector<Place> gaussian_places(std::uint64_t limit);

// Exponent of the Gaussian prime `pi` in x (x nonzero).
int valuation(GaussianInt x, GaussianInt pi);

// False for 0; otherwise true iff no Gaussian prime power pi^r divides g.
bool is_r_power_free(GaussianInt g, int r);

bool is_h_wise_r_prime(std::span<const GaussianInt> tuple, const Hypergraph& h, int r);

// All a + bi with a, b in [-M, M), a-major order.
struct GaussianBox {
    std::int64_t M = 1;
    std::uint64_t size() const;
    GaussianInt at(std::uint64_t index) const;
    std::vector<GaussianInt> elements() const;
};

std::string to_string(GaussianInt x);  // "a+bi" / "a-bi"
GaussianInt parse_gaussian(const std::string& text);

}  // namespace hdensity::gaussian
