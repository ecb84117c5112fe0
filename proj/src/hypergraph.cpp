#include "hdensity/hypergraph.hpp"

#include "hdensity/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>
#include <sstream>

namespace hdensity {

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
    std::string out = "invalid hypergraph:";
    for (const auto& v : vs) {
        out += "\n  ";
        out += v.message;
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / i;
    return out;
}

void count_from(const std::vector<std::vector<VertexMask>>& closing, int m, int start,
                VertexMask current, int size, std::vector<std::uint64_t>& counts) {
    for (int v = start; v < m; ++v) {
        const VertexMask candidate = current | (VertexMask{1} << v);
        bool ok = true;
        for (VertexMask e : closing[v]) {
            if ((e & candidate) == e) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ++counts[size + 1];
        count_from(closing, m, v + 1, candidate, size + 1, counts);
    }
}

long parse_long(std::string_view tok, int line_no) {
    long value = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw InputError("line " + std::to_string(line_no) + ": expected integer, got '" +
                         std::string(tok) + "'");
    return value;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<long> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        long v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw InputError("bad hypergraph family '" + what + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

std::vector<Violation> validate(const HypergraphDesc& desc) {
    using K = Violation::Kind;
    std::vector<Violation> out;
    if (desc.m < 1 || desc.m > kMaxVertices)
        out.push_back({K::bad_vertex_count, 0,
                       "vertex count m=" + std::to_string(desc.m) + " outside [1, " +
                           std::to_string(kMaxVertices) + "]"});
    if (desc.j < 2 || desc.j > desc.m)
        out.push_back({K::bad_uniformity, 0,
                       "uniformity j=" + std::to_string(desc.j) + " must satisfy 2 <= j <= m"});
    std::set<std::vector<long>> seen;
    for (std::size_t i = 0; i < desc.edges.size(); ++i) {
        const auto& e = desc.edges[i];
        const std::string where = "edge " + std::to_string(i) + ": ";
        bool in_range = true;
        for (long v : e) {
            if (v < 0 || v >= desc.m) {
                out.push_back({K::out_of_range, i,
                               where + "vertex out of range (" + std::to_string(v) + ")"});
                in_range = false;
                break;
            }
        }
        std::vector<long> sorted = e;
        std::sort(sorted.begin(), sorted.end());
        const bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
        const auto distinct = static_cast<long>(
            std::unique(sorted.begin(), sorted.end()) - sorted.begin());
        sorted.resize(static_cast<std::size_t>(distinct));
        if (static_cast<long>(e.size()) != desc.j || repeated) {
            std::string msg = where + "edge arity != j (" + std::to_string(e.size()) +
                              " entries, " + std::to_string(distinct) + " distinct, j=" +
                              std::to_string(desc.j) + ")";
            if (repeated) msg += " (duplicate vertex)";
            out.push_back({K::arity, i, msg});
            continue;
        }
        if (in_range && !seen.insert(sorted).second)
            out.push_back({K::duplicate_edge, i, where + "duplicate edge"});
    }
    return out;
}

Hypergraph Hypergraph::from(const HypergraphDesc& desc) {
    const auto violations = validate(desc);
    if (!violations.empty()) throw InputError(join_violations(violations));
    std::vector<VertexMask> masks;
    masks.reserve(desc.edges.size());
    for (const auto& e : desc.edges) {
        VertexMask mask = 0;
        for (long v : e) mask |= VertexMask{1} << v;
        masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end());
    return Hypergraph(static_cast<int>(desc.m), static_cast<int>(desc.j), std::move(masks));
}

Hypergraph Hypergraph::from_masks(int m, int j, std::vector<VertexMask> edges) {
    HypergraphDesc desc{m, j, {}};
    for (VertexMask mask : edges) {
        std::vector<long> e;
        for (int v = 0; v < kMaxVertices; ++v)
            if (mask >> v & 1) e.push_back(v);
        desc.edges.push_back(std::move(e));
    }
    return from(desc);
}

HypergraphDesc Hypergraph::describe() const {
    HypergraphDesc desc{m_, j_, {}};
    for (VertexMask mask : edges_) {
        std::vector<long> e;
        for (int v = 0; v < m_; ++v)
            if (mask >> v & 1) e.push_back(v);
        desc.edges.push_back(std::move(e));
    }
    return desc;
}

bool is_independent(const Hypergraph& h, VertexMask subset) {
    if (h.m() < kMaxVertices && (subset >> h.m()) != 0)
        throw InputError("subset contains a vertex outside [0, m)");
    return std::none_of(h.edges().begin(), h.edges().end(),
                        [subset](VertexMask e) { return (e & subset) == e; });
}

bool is_independent(const Hypergraph& h, std::span<const int> subset) {
    VertexMask mask = 0;
    for (int v : subset) {
        if (v < 0 || v >= h.m())
            throw InputError("vertex " + std::to_string(v) + " outside [0, m)");
        mask |= VertexMask{1} << v;
    }
    return is_independent(h, mask);
}

IndepProfile independence_counts(const Hypergraph& h, int cap) {
    const int m = h.m();
    if (m > cap)
        throw CapacityError("independence counting limited to m <= " + std::to_string(cap) +
                            " (got m=" + std::to_string(m) + ")");
    // Edges indexed by their highest vertex: adding vertex v can only complete those.
    std::vector<std::vector<VertexMask>> closing(static_cast<std::size_t>(m));
    for (VertexMask e : h.edges()) closing[std::bit_width(e) - 1].push_back(e);
    IndepProfile out{std::vector<std::uint64_t>(static_cast<std::size_t>(m) + 1, 0)};
    out.counts[0] = 1;
    count_from(closing, m, 0, 0, 0, out.counts);
    return out;
}

IndepProfile complete_profile(int m, int j) {
    if (j < 2 || j > m) throw InputError("complete profile requires 2 <= j <= m");
    IndepProfile out{std::vector<std::uint64_t>(static_cast<std::size_t>(m) + 1, 0)};
    for (int k = 0; k < j; ++k) out.counts[k] = binomial(m, k);
    return out;
}

Hypergraph complete_uniform(int m, int j) {
    if (j < 2 || j > m || m > kMaxVertices)
        throw InputError("complete_uniform requires 2 <= j <= m <= 64");
    std::vector<VertexMask> edges;
    // Gosper's hack over all j-subsets of m bits.
    VertexMask s = j == 64 ? ~VertexMask{0} : (VertexMask{1} << j) - 1;
    const int limit = m;
    while (true) {
        edges.push_back(s);
        const VertexMask c = s & (~s + 1);
        const VertexMask r = s + c;
        if (r == 0) break;
        s = (((r ^ s) >> 2) / c) | r;
        if (limit < kMaxVertices && (s >> limit) != 0) break;
    }
    return Hypergraph::from_masks(m, j, std::move(edges));
}

Hypergraph path_graph(int m) {
    if (m < 2) throw InputError("path graph requires m >= 2");
    std::vector<VertexMask> edges;
    for (int v = 0; v + 1 < m; ++v) edges.push_back((VertexMask{3}) << v);
    return Hypergraph::from_masks(m, 2, std::move(edges));
}

Hypergraph cycle_graph(int m) {
    if (m < 3) throw InputError("cycle graph requires m >= 3");
    std::vector<VertexMask> edges;
    for (int v = 0; v + 1 < m; ++v) edges.push_back((VertexMask{3}) << v);
    edges.push_back(VertexMask{1} | (VertexMask{1} << (m - 1)));
    return Hypergraph::from_masks(m, 2, std::move(edges));
}

Hypergraph edgeless(int m, int j) { return Hypergraph::from(HypergraphDesc{m, j, {}}); }

Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    HypergraphDesc desc;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ls(t);
        std::string tok;
        if (!have_header) {
            bool got_m = false, got_j = false;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos)
                    throw InputError("line " + std::to_string(line_no) +
                                     ": expected header 'm=<int> j=<int>'");
                const std::string key = tok.substr(0, eq);
                const long value = parse_long(std::string_view(tok).substr(eq + 1), line_no);
                if (key == "m") {
                    desc.m = value;
                    got_m = true;
                } else if (key == "j") {
                    desc.j = value;
                    got_j = true;
                } else {
                    throw InputError("line " + std::to_string(line_no) + ": unknown key '" +
                                     key + "'");
                }
            }
            if (!got_m || !got_j)
                throw InputError("line " + std::to_string(line_no) +
                                 ": header must give both m and j");
            have_header = true;
            continue;
        }
        std::vector<long> edge;
        while (ls >> tok) edge.push_back(parse_long(tok, line_no));
        desc.edges.push_back(std::move(edge));
    }
    if (!have_header) throw InputError("line 1: missing header 'm=<int> j=<int>'");
    return Hypergraph::from(desc);
}

std::string format_hypergraph(const Hypergraph& h) {
    std::string out = "m=" + std::to_string(h.m()) + " j=" + std::to_string(h.j()) + "\n";
    for (const auto& e : h.describe().edges) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(e[i]);
        }
        out += '\n';
    }
    return out;
}

bool is_named_family(const std::string& spec) {
    for (const char* prefix : {"complete:", "path:", "cycle:", "edgeless:"})
        if (spec.rfind(prefix, 0) == 0) return true;
    return false;
}

Hypergraph named_family(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("bad hypergraph family '" + spec + "'");
    const std::string name = spec.substr(0, colon);
    const auto args = parse_int_list(spec.substr(colon + 1), spec);
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw InputError("family '" + name + "' takes " + std::to_string(n) +
                             " argument(s): '" + spec + "'");
        for (long a : args)
            if (a < 0 || a > kMaxVertices) throw InputError("argument out of range in '" + spec + "'");
    };
    if (name == "complete") {
        need(2);
        return complete_uniform(static_cast<int>(args[0]), static_cast<int>(args[1]));
    }
    if (name == "path") {
        need(1);
        return path_graph(static_cast<int>(args[0]));
    }
    if (name == "cycle") {
        need(1);
        return cycle_graph(static_cast<int>(args[0]));
    }
    if (name == "edgeless") {
        need(2);
        return edgeless(static_cast<int>(args[0]), static_cast<int>(args[1]));
    }
    throw InputError("unknown hypergraph family '" + name + "'");
}

}  // namespace hdensity
