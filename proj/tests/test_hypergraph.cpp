#include "hdensity/errors.hpp"
#include "hdensity/hypergraph.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace hdensity;

namespace {

bool has_violation(const HypergraphDesc& d, Violation::Kind kind, const std::string& text) {
    for (const auto& v : validate(d))
        if (v.kind == kind && v.message.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("validate") {
    CHECK(validate({3, 2, {{0, 1}}}).empty());
    CHECK(has_violation({3, 2, {{0, 3}}}, Violation::Kind::out_of_range, "vertex out of range"));
    CHECK(has_violation({3, 3, {{0, 1}}}, Violation::Kind::arity, "edge arity != j"));
    CHECK(has_violation({3, 2, {{0, 1}, {1, 0}}}, Violation::Kind::duplicate_edge, "duplicate edge"));
    CHECK(has_violation({0, 2, {}}, Violation::Kind::bad_vertex_count, "vertex count"));
    CHECK(has_violation({3, 4, {}}, Violation::Kind::bad_uniformity, "uniformity"));
    CHECK(has_violation({3, 1, {}}, Violation::Kind::bad_uniformity, "uniformity"));
    // every problem is reported, not just the first
    CHECK(validate({3, 2, {{0, 5}, {1, 1}, {0, 1, 2}}}).size() == 3);
    CHECK_THROWS_AS(Hypergraph::from({3, 2, {{0, 3}}}), InputError);
}

TEST_CASE("is_independent") {
    const Hypergraph path = path_graph(3);
    CHECK(is_independent(path, VertexMask{0b101}));
    const std::vector<int> s02{0, 2};
    CHECK(is_independent(path, s02));
    CHECK(is_independent(complete_uniform(3, 2), VertexMask{0}));
    CHECK_FALSE(is_independent(complete_uniform(3, 2), VertexMask{0b011}));
    const std::vector<int> bad{0, 7};
    CHECK_THROWS_AS(is_independent(path, bad), InputError);
}

TEST_CASE("independence counts on small families") {
    CHECK(independence_counts(edgeless(3, 2)).counts == std::vector<std::uint64_t>{1, 3, 3, 1});
    CHECK(independence_counts(path_graph(3)).counts == std::vector<std::uint64_t>{1, 3, 1, 0});
    CHECK(independence_counts(complete_uniform(4, 2)).counts ==
          std::vector<std::uint64_t>{1, 4, 0, 0, 0});
    CHECK(independence_counts(cycle_graph(5)).counts ==
          std::vector<std::uint64_t>{1, 5, 5, 0, 0, 0});
}

TEST_CASE("independence counts agree with subset enumeration") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        const Hypergraph h = oracle::random_hypergraph(rng, 12);
        CHECK(independence_counts(h).counts == oracle::indep_by_subsets(h));
    }
}

TEST_CASE("complete uniform closed form") {
    CHECK(complete_uniform(3, 2).edge_count() == 3);
    CHECK(complete_uniform(4, 3).edge_count() == 4);
    CHECK(complete_uniform(5, 2).edge_count() == 10);
    for (int m = 2; m <= 10; ++m)
        for (int j = 2; j <= m; ++j) {
            const auto p = independence_counts(complete_uniform(m, j));
            CHECK(p == complete_profile(m, j));
            for (int k = 0; k <= m; ++k) CHECK(p[k] == (k < j ? oracle::binom(m, k) : 0));
        }
}

TEST_CASE("capacity guard") {
    CHECK_THROWS_AS(independence_counts(edgeless(30, 2)), CapacityError);
    CHECK(independence_counts(edgeless(30, 2), 30)[15] == oracle::binom(30, 15));
}

TEST_CASE("parse and format") {
    CHECK(parse_hypergraph("m=3 j=2\n0 1\n1 2\n") == path_graph(3));
    CHECK(parse_hypergraph("# comment\nm=4 j=3\n\n0 1 2\n").edge_count() == 1);
    const auto h = complete_uniform(5, 3);
    CHECK(parse_hypergraph(format_hypergraph(h)) == h);
    try {
        parse_hypergraph("m=2 j=2\n0 0\n");
        FAIL("expected rejection");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("edge arity != j") != std::string::npos);
        CHECK(std::string(e.what()).find("(duplicate vertex)") != std::string::npos);
    }
    CHECK_THROWS_WITH_AS(parse_hypergraph("m=3 j=2\n0 x\n"), doctest::Contains("line 2"), InputError);
    CHECK_THROWS_AS(parse_hypergraph(""), InputError);
}

TEST_CASE("named families") {
    CHECK(named_family("complete:4,2") == complete_uniform(4, 2));
    CHECK(named_family("path:3") == path_graph(3));
    CHECK(named_family("cycle:4").edge_count() == 4);
    CHECK(named_family("edgeless:3,2").edgeless());
    CHECK_FALSE(is_named_family("graph.hg"));
    CHECK_THROWS_AS(named_family("complete:4"), InputError);
    CHECK_THROWS_AS(named_family("complete:1,5"), InputError);
    CHECK_THROWS_AS(named_family("cycle:2"), InputError);
}
