#pragma once

// Slow reference implementations shared by the unit tests.

#include "hdensity/hypergraph.hpp"
#include "hdensity/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// i_k by testing every subset against every edge.
inline std::vector<std::uint64_t> indep_by_subsets(const hdensity::Hypergraph& h) {
    std::vector<std::uint64_t> counts(h.m() + 1, 0);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << h.m()); ++s) {
        bool ok = true;
        for (auto e : h.edges())
            if ((e & s) == e) ok = false;
        if (ok) ++counts[__builtin_popcountll(s)];
    }
    return counts;
}

inline hdensity::Hypergraph random_hypergraph(std::mt19937_64& rng, int max_m) {
    const int m = 2 + static_cast<int>(rng() % (max_m - 1));
    const int j = 2 + static_cast<int>(rng() % (m - 1));
    std::vector<hdensity::VertexMask> edges;
    const int tries = static_cast<int>(rng() % (2 * m + 1));
    for (int t = 0; t < tries; ++t) {
        hdensity::VertexMask e = 0;
        while (__builtin_popcountll(e) < j) e |= hdensity::VertexMask{1} << (rng() % m);
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return hdensity::Hypergraph::from_masks(m, j, edges);
}

inline hdensity::Hypergraph random_graph(std::mt19937_64& rng, int max_m) {
    const int m = 2 + static_cast<int>(rng() % (max_m - 1));
    std::vector<hdensity::VertexMask> edges;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (rng() % 2) edges.push_back((hdensity::VertexMask{1} << a) | (hdensity::VertexMask{1} << b));
    std::sort(edges.begin(), edges.end());
    return hdensity::Hypergraph::from_masks(m, 2, edges);
}

inline std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace oracle
