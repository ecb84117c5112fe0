#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hdensity {

using VertexMask = std::uint64_t;

inline constexpr int kMaxVertices = 64;
inline constexpr int kDefaultEnumerationCap = 24;

// Unchecked hypergraph description, as read from text or built by hand.
struct HypergraphDesc {
    long m = 0;
    long j = 0;
    std::vector<std::vector<long>> edges;
};

struct Violation {
    enum class Kind { bad_vertex_count, bad_uniformity, arity, out_of_range, duplicate_edge };
    Kind kind;
    std::size_t edge_index;  // meaningless for the first two kinds
    std::string message;
};

std::vector<Violation> validate(const HypergraphDesc& desc);

// Simple undirected j-uniform hypergraph on vertices 0..m-1. Edges are stored
// as vertex bitmasks in ascending numeric order; instances are immutable and
// always satisfy the invariants checked by validate().
class Hypergraph {
public:
    // Throws InputError listing every violation.
    static Hypergraph from(const HypergraphDesc& desc);
    static Hypergraph from_masks(int m, int j, std::vector<VertexMask> edges);

    int m() const noexcept { return m_; }
    int j() const noexcept { return j_; }
    std::span<const VertexMask> edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool edgeless() const noexcept { return edges_.empty(); }

    HypergraphDesc describe() const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    Hypergraph(int m, int j, std::vector<VertexMask> edges)
        : m_(m), j_(j), edges_(std::move(edges)) {}

    int m_;
    int j_;
    std::vector<VertexMask> edges_;
};

// Counts i_0..i_m of independent vertex sets by size.
struct IndepProfile {
    std::vector<std::uint64_t> counts;

    int m() const noexcept { return static_cast<int>(counts.size()) - 1; }
    std::uint64_t operator[](std::size_t k) const { return counts.at(k); }
    friend bool operator==(const IndepProfile&, const IndepProfile&) = default;
};

// Throws InputError on an out-of-range vertex in `subset`.
bool is_independent(const Hypergraph& h, VertexMask subset);
bool is_independent(const Hypergraph& h, std::span<const int> subset);

// Exact via depth-first enumeration of independent sets only. Throws
// CapacityError when m exceeds `cap`.
IndepProfile independence_counts(const Hypergraph& h, int cap = kDefaultEnumerationCap);

// i_k = C(m,k) for k < j, zero otherwise.
IndepProfile complete_profile(int m, int j);

Hypergraph complete_uniform(int m, int j);
Hypergraph path_graph(int m);
Hypergraph cycle_graph(int m);
Hypergraph edgeless(int m, int j);

// Text format: header "m=<int> j=<int>", then one edge per non-empty line;
// lines whose first non-blank character is '#' are comments.
Hypergraph parse_hypergraph(const std::string& text);
std::string format_hypergraph(const Hypergraph& h);

// "complete:m,j", "path:m", "cycle:m", "edgeless:m,j".
Hypergraph named_family(const std::string& spec);
bool is_named_family(const std::string& spec);

}  // namespace hdensity
