#pragma once

#include "hdensity/density.hpp"
#include "hdensity/hypergraph.hpp"

#include <cstdint>
#include <span>
#include <vector>

// Integer backend.
namespace hdensity::integers {

// Sieve of Eratosthenes; ascending primes <= limit.
std::vector<std::uint64_t> primes_up_to_list(std::uint64_t limit);

// One place per rational prime p <= limit: norm p, multiplicity 1.
std::vector<Place> primes_up_to(std::uint64_t limit);

// False for 0; otherwise true iff no prime power p^r divides g. Sign ignored.
bool is_r_power_free(std::int64_t g, int r);

// Non-negative gcd of all entries; gcd of nothing (or of zeros) is 0.
std::int64_t gcd_of(std::span<const std::int64_t> xs);

// True iff the gcd over every hyperedge is r-power-free. Throws InputError
// if the tuple length differs from h.m().
bool is_h_wise_r_prime(std::span<const std::int64_t> tuple, const Hypergraph& h, int r);

struct IntBox {
    enum class Mode { symmetric, classical };

    std::int64_t M = 1;
    Mode mode = Mode::symmetric;

    // symmetric: [-M, M); classical: [1, M].
    std::uint64_t size() const;
    std::int64_t at(std::uint64_t index) const;
    std::vector<std::int64_t> elements() const;
};

}  // namespace hdensity::integers
