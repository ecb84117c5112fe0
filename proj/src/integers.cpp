#include "hdensity/integers.hpp"

#include "hdensity/errors.hpp"

#include <numeric>

namespace hdensity::integers {

std::vector<std::uint64_t> primes_up_to_list(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t k = i * i; k <= limit; k += i) composite[k] = true;
    }
    return out;
}

std::vector<Place> primes_up_to(std::uint64_t limit) {
    if (limit < 2) throw InputError("prime cutoff must be >= 2");
    std::vector<Place> out;
    for (std::uint64_t p : primes_up_to_list(limit))
        out.push_back(Place{RingKind::integers, BigInt(static_cast<unsigned long>(p)), 1,
                            RationalPrimePlace{p}});
    return out;
}

bool is_r_power_free(std::int64_t g, int r) {
    if (r < 1) throw InputError("r must be >= 1");
    if (g == 0) return false;
    std::uint64_t n = g < 0 ? 0 - static_cast<std::uint64_t>(g) : static_cast<std::uint64_t>(g);
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            if (++e >= r) return false;
        }
    }
    // Whatever remains is 1 or a prime occurring once.
    return n == 1 || r > 1;
}

std::int64_t gcd_of(std::span<const std::int64_t> xs) {
    std::uint64_t g = 0;
    for (std::int64_t x : xs) {
        const std::uint64_t a = x < 0 ? 0 - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x);
        g = std::gcd(g, a);
    }
    return static_cast<std::int64_t>(g);
}

bool is_h_wise_r_prime(std::span<const std::int64_t> tuple, const Hypergraph& h, int r) {
    if (static_cast<int>(tuple.size()) != h.m())
        throw InputError("tuple length " + std::to_string(tuple.size()) + " != m = " +
                         std::to_string(h.m()));
    for (VertexMask e : h.edges()) {
        std::uint64_t g = 0;
        for (int v = 0; v < h.m(); ++v) {
            if (!(e >> v & 1)) continue;
            const std::int64_t x = tuple[static_cast<std::size_t>(v)];
            g = std::gcd(g, x < 0 ? 0 - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x));
            if (g == 1) break;
        }
        if (g == 1) continue;
        if (!is_r_power_free(static_cast<std::int64_t>(g), r)) return false;
    }
    return true;
}

std::uint64_t IntBox::size() const {
    if (M < 1) throw InputError("box parameter M must be >= 1");
    return mode == Mode::symmetric ? 2 * static_cast<std::uint64_t>(M)
                                   : static_cast<std::uint64_t>(M);
}

std::int64_t IntBox::at(std::uint64_t index) const {
    return mode == Mode::symmetric ? -M + static_cast<std::int64_t>(index)
                                   : 1 + static_cast<std::int64_t>(index);
}

std::vector<std::int64_t> IntBox::elements() const {
    std::vector<std::int64_t> out(size());
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = at(i);
    return out;
}

}  // namespace hdensity::integers
