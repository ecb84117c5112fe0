#pragma once

// Independent prime-field polynomial arithmetic for cross-checks.
// Polynomials are coefficient vectors, lowest degree first, possibly with
// trailing zeros.

#include <cstdint>
#include <set>
#include <vector>

namespace naive {

using P = std::vector<std::uint32_t>;

inline P trim(P a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline P mul(const P& a, const P& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    P out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return trim(out);
}

// All monic polynomials of degree d as coefficient vectors.
inline std::vector<P> monics(std::uint32_t p, int d) {
    std::vector<P> out;
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        P f(d + 1, 0);
        std::uint64_t t = idx;
        for (int i = 0; i < d; ++i) {
            f[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        f[d] = 1;
        out.push_back(f);
    }
    return out;
}

// Monic irreducibles of degree d: monics that are not a product of two
// monics of positive degree.
inline std::set<P> irreducibles(std::uint32_t p, int d) {
    std::set<P> reducible;
    for (int i = 1; i <= d / 2; ++i)
        for (const auto& a : monics(p, i))
            for (const auto& b : monics(p, d - i)) reducible.insert(mul(a, b, p));
    std::set<P> out;
    for (const auto& f : monics(p, d))
        if (!reducible.count(f)) out.insert(f);
    return out;
}

}  // namespace naive
