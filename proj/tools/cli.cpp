#include "cli.hpp"

#include "hdensity/density.hpp"
#include "hdensity/errors.hpp"
#include "hdensity/estimator.hpp"
#include "hdensity/fqx.hpp"
#include "hdensity/gaussian.hpp"
#include "hdensity/hypergraph.hpp"
#include "hdensity/integers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace hdensity::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    std::string ring = "Z";
    std::string hypergraph;
    int r = 1;
    std::optional<std::uint64_t> cutoff;
    std::optional<std::int64_t> box;
    std::string box_mode = "symmetric";
    std::optional<std::uint64_t> samples;
    bool enumerate = false;
    std::uint64_t seed = 0;
    std::string S;
    std::uint64_t q_scale = 1;
    std::uint64_t b = 1;
    std::string sizes;
    std::string format = "json";
    int digits = 12;
    unsigned threads = 1;
    std::optional<std::uint64_t> budget;
    std::size_t max_exact_digits = 10000;
};

struct Ring {
    RingKind kind = RingKind::integers;
    std::shared_ptr<const fqx::FiniteField> field;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// Splits on commas that are not inside [...].
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
        const auto v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError("bad " + what + " '" + s + "'");
    }
}

// "Z" | "Zi" | "Fq[x]:q=<n>[,mod=<poly>]"
Ring parse_ring(const std::string& spec) {
    if (spec == "Z") return {RingKind::integers, nullptr};
    if (spec == "Zi") return {RingKind::gaussian, nullptr};
    const std::string prefix = "Fq[x]:";
    if (spec.rfind(prefix, 0) != 0)
        throw InputError("unknown ring '" + spec + "' (expected Z, Zi or Fq[x]:q=<n>[,mod=<poly>])");
    std::optional<std::uint64_t> q;
    std::optional<std::string> mod;
    std::stringstream ss(spec.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("bad ring parameter '" + item + "'");
        const std::string key = trim(item.substr(0, eq)), value = trim(item.substr(eq + 1));
        if (key == "q") q = parse_u64(value, "field order");
        else if (key == "mod") mod = value;
        else throw InputError("unknown ring parameter '" + key + "'");
    }
    if (!q) throw InputError("ring '" + spec + "' lacks q=<n>");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (mod) {
        const auto base = fqx::make_field_spec(*q);
        const fqx::FiniteField prime_field(fqx::FieldSpec{base.p, 1, {}});
        const fqx::Poly f = fqx::parse_poly(prime_field, *mod);
        modulus = std::vector<std::uint32_t>(f.coeffs().begin(), f.coeffs().end());
    }
    return {RingKind::fqx, std::make_shared<const fqx::FiniteField>(fqx::make_field_spec(*q, modulus))};
}

Hypergraph load_hypergraph(const std::string& source) {
    if (source.empty()) throw InputError("--hypergraph is required");
    if (is_named_family(source)) return named_family(source);
    std::ifstream in(source);
    if (!in) throw InputError("cannot open hypergraph file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_hypergraph(buf.str());
}

json hypergraph_json(const Hypergraph& h) {
    json edges = json::array();
    for (const auto& e : h.describe().edges) edges.push_back(e);
    return json{{"m", h.m()}, {"j", h.j()}, {"edges", edges}};
}

class Renderer {
public:
    Renderer(int digits, std::size_t max_exact) : digits_(digits), max_exact_(max_exact) {}

    json rational(const Rational& v) const {
        json out;
        const std::string num = v.get_num().get_str(10);
        const std::string den = v.get_den().get_str(10);
        if (max_exact_ == 0 || (num.size() <= max_exact_ && den.size() <= max_exact_)) {
            out["num"] = num;
            out["den"] = den;
        } else {
            out["num"] = nullptr;
            out["den"] = nullptr;
            out["num_digits"] = num.size();
            out["den_digits"] = den.size();
        }
        out["decimal"] = to_decimal(v, digits_);
        return out;
    }

    json big(const BigInt& v) const { return v.get_str(10); }

private:
    int digits_;
    std::size_t max_exact_;
};

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["ring"] = c.ring;
    if (!c.hypergraph.empty()) j["hypergraph"] = c.hypergraph;
    j["r"] = c.r;
    if (c.cutoff) j["cutoff"] = *c.cutoff;
    if (c.box) j["box"] = *c.box;
    j["box_mode"] = c.box_mode;
    if (c.samples) j["samples"] = *c.samples;
    if (c.enumerate) j["enumerate"] = true;
    j["seed"] = c.seed;
    if (!c.S.empty()) j["S"] = c.S;
    j["q"] = c.q_scale;
    j["b"] = c.b;
    if (!c.sizes.empty()) j["sizes"] = c.sizes;
    j["format"] = c.format;
    j["digits"] = c.digits;
    j["threads"] = c.threads;
    j["budget"] = c.budget.value_or(estimator::kDefaultBudget);
    j["max_exact_digits"] = c.max_exact_digits;
    return j;
}

estimator::RunOptions run_options(const RunConfig& c) {
    return {c.budget.value_or(estimator::kDefaultBudget), std::max(1u, c.threads)};
}

estimator::Box make_box(const Ring& ring, const RunConfig& c, std::uint64_t param) {
    const auto M = static_cast<std::int64_t>(param);
    switch (ring.kind) {
        case RingKind::integers: {
            integers::IntBox::Mode mode;
            if (c.box_mode == "symmetric") mode = integers::IntBox::Mode::symmetric;
            else if (c.box_mode == "classical") mode = integers::IntBox::Mode::classical;
            else throw InputError("--box-mode must be symmetric or classical");
            return estimator::Box::integers({M, mode});
        }
        case RingKind::gaussian: return estimator::Box::gaussian({M});
        case RingKind::fqx: break;
    }
    return estimator::Box::fqx(ring.field, param);
}

estimator::FiniteSSpec make_finite_s(const Ring& ring, const RunConfig& c, const Hypergraph& h) {
    estimator::FiniteSSpec spec;
    spec.ring = ring.kind;
    spec.r = c.r;
    spec.h = h;
    spec.field = ring.field;
    const auto items = split_list(c.S);
    if (items.empty()) throw InputError("--S must list at least one prime or irreducible");
    for (const auto& item : items) {
        if (ring.kind == RingKind::fqx) spec.irreducibles.push_back(fqx::parse_poly(*ring.field, item));
        else spec.primes.push_back(parse_u64(item, "prime"));
    }
    spec.validate();
    return spec;
}

struct Theory {
    DensityInterval interval;
    std::string cutoff_kind;
};

Theory theoretical_interval(const Ring& ring, const ProblemSpec& spec, std::uint64_t cutoff) {
    Theory t;
    std::vector<Place> places;
    Rational tail = 0;
    const bool rigorous = !spec.divergent_regime();
    switch (ring.kind) {
        case RingKind::integers:
            t.cutoff_kind = "rational primes <= cutoff";
            places = integers::primes_up_to(cutoff);
            if (rigorous) tail = tail_bound_numberfield(spec.m(), spec.r(), 1, cutoff);
            break;
        case RingKind::gaussian:
            t.cutoff_kind = "prime ideals above rational primes <= cutoff";
            places = gaussian::gaussian_places(cutoff);
            if (rigorous) tail = tail_bound_numberfield(spec.m(), spec.r(), 2, cutoff);
            break;
        case RingKind::fqx: {
            if (cutoff > 64) throw InputError("degree cutoff must be <= 64");
            t.cutoff_kind = "irreducible degree <= cutoff";
            const int d = static_cast<int>(cutoff);
            places = fqx::fqx_places(ring.field->q(), d);
            if (rigorous) tail = tail_bound_fqx(spec.m(), spec.r(), ring.field->q(), d);
            break;
        }
    }
    t.interval = euler_product(spec, places, cutoff, tail);
    return t;
}

json interval_json(const Theory& t, const Renderer& R) {
    json j;
    j["lower"] = R.rational(t.interval.lower);
    j["upper"] = R.rational(t.interval.upper);
    j["cutoff"] = t.interval.cutoff;
    j["cutoff_kind"] = t.cutoff_kind;
    j["tail_bound"] = R.rational(t.interval.tail_bound);
    j["places"] = t.interval.places_used;
    if (t.interval.warning) j["warning"] = *t.interval.warning;
    return j;
}

json sample_json(const estimator::SampleReport& s, const Renderer& R) {
    json j;
    j["hits"] = s.hits;
    j["samples"] = s.samples;
    j["estimate"] = R.rational(s.estimate);
    j["ci95"] = {{"low", to_decimal(from_double(s.ci_low), 12)},
                 {"high", to_decimal(from_double(s.ci_high), 12)}};
    j["seed"] = s.seed;
    j["mode"] = s.mode == estimator::SamplingMode::enumerate ? "enumerate" : "random";
    return j;
}

// Cutoffs small enough to compute alongside an empirical run.
std::uint64_t cheap_cutoff(const Ring& ring) {
    if (ring.kind != RingKind::fqx) return 1000;
    std::uint64_t d = 1, span = ring.field->q();
    while (d < 10 && span * ring.field->q() <= 100000) {
        span *= ring.field->q();
        ++d;
    }
    return d;
}

json cmd_indep(const RunConfig& c, const Renderer&) {
    const Hypergraph h = load_hypergraph(c.hypergraph);
    const IndepProfile p = independence_counts(h);
    json j;
    j["hypergraph"] = hypergraph_json(h);
    j["m"] = h.m();
    j["j"] = h.j();
    j["edge_count"] = h.edge_count();
    j["independence_counts"] = p.counts;
    return j;
}

json cmd_theoretical(const RunConfig& c, const Renderer& R) {
    const Ring ring = parse_ring(c.ring);
    const ProblemSpec spec(load_hypergraph(c.hypergraph), c.r);
    if (!c.cutoff) throw InputError("--cutoff is required");
    const Theory t = theoretical_interval(ring, spec, *c.cutoff);
    json j;
    j["hypergraph"] = hypergraph_json(spec.hypergraph());
    j["independence_counts"] = spec.profile().counts;
    j["interval"] = interval_json(t, R);
    return j;
}

json cmd_empirical(const RunConfig& c, const Renderer& R) {
    const Ring ring = parse_ring(c.ring);
    const Hypergraph h = load_hypergraph(c.hypergraph);
    const ProblemSpec spec(h, c.r);
    if (!c.box || *c.box < (ring.kind == RingKind::fqx ? 0 : 1))
        throw InputError("--box is required (M >= 1, or index bound N >= 0 for Fq[x])");
    const estimator::Box box = make_box(ring, c, static_cast<std::uint64_t>(*c.box));
    const auto opts = run_options(c);
    json j;
    j["hypergraph"] = hypergraph_json(h);
    j["box"] = {{"description", box.describe()}, {"size", box.size()}};
    if (c.samples || c.enumerate) {
        const auto mode = c.enumerate ? estimator::SamplingMode::enumerate : estimator::SamplingMode::random;
        j["method"] = "monte_carlo";
        j["report"] = sample_json(
            estimator::monte_carlo_density(box, h, c.r, c.samples.value_or(0), c.seed, opts, mode), R);
    } else {
        const auto ex = estimator::exhaustive_density(box, h, c.r, opts);
        j["method"] = "exhaustive";
        j["hits"] = R.big(ex.hits);
        j["total"] = R.big(ex.total);
        j["density"] = R.rational(ex.density());
    }
    try {
        j["theoretical"] = interval_json(theoretical_interval(ring, spec, cheap_cutoff(ring)), R);
    } catch (const CapacityError&) {
        j["theoretical"] = nullptr;
    }
    return j;
}

json verify_json(const estimator::VerifyReport& v, const Renderer& R, const char* scale_name) {
    json j;
    j["counted"] = R.big(v.counted);
    j["formula"] = R.big(v.formula);
    j["equal"] = v.equal;
    j["extra_power_formula"] = R.big(v.extra_power_formula);
    j["extra_power_formula_equal"] = v.counted == v.extra_power_formula;
    j["modulus_N"] = R.big(v.modulus);
    j["box_parameter"] = v.box_parameter;
    j["box_size"] = R.big(v.box_size);
    j["field_degree"] = v.field_degree;
    j[scale_name] = v.scale;
    return j;
}

json cmd_verify(const RunConfig& c, const Renderer& R, bool prop23) {
    const Ring ring = parse_ring(c.ring);
    const Hypergraph h = load_hypergraph(c.hypergraph);
    const auto spec = make_finite_s(ring, c, h);
    const auto opts = run_options(c);
    const auto rep = prop23 ? estimator::verify_number_ring_count(spec, c.q_scale, opts)
                            : estimator::verify_polynomial_count(spec, c.b, opts);
    json j;
    j["hypergraph"] = hypergraph_json(h);
    j["verification"] = verify_json(rep, R, prop23 ? "q" : "b");
    j["density"] = R.rational(estimator::finite_s_density(spec));
    return j;
}

json cmd_sweep(const RunConfig& c, const Renderer& R) {
    const Ring ring = parse_ring(c.ring);
    const Hypergraph h = load_hypergraph(c.hypergraph);
    estimator::SweepRequest req;
    req.ring = ring.kind;
    req.field = ring.field;
    req.h = h;
    req.r = c.r;
    if (c.box_mode == "classical") req.int_mode = integers::IntBox::Mode::classical;
    else if (c.box_mode != "symmetric") throw InputError("--box-mode must be symmetric or classical");
    for (const auto& s : split_list(c.sizes)) req.sizes.push_back(parse_u64(s, "size"));
    if (req.sizes.empty()) throw InputError("--sizes must list at least one size");
    if (!c.S.empty()) req.finite_s = make_finite_s(ring, c, h);
    req.samples = c.samples;
    req.seed = c.seed;
    const auto table = estimator::convergence_sweep(req, run_options(c));
    json rows = json::array();
    for (const auto& row : table.rows) {
        json rj;
        rj["size"] = row.size;
        rj["box_parameter"] = row.box_parameter;
        if (row.density) rj["density"] = R.rational(*row.density);
        if (row.sampled) rj["sampled"] = sample_json(*row.sampled, R);
        if (row.error) rj["error"] = *row.error;
        rows.push_back(rj);
    }
    json j;
    j["hypergraph"] = hypergraph_json(h);
    j["mode"] = req.finite_s ? "finite_s" : "full";
    j["rows"] = rows;
    if (table.expected) j["expected"] = R.rational(*table.expected);
    if (table.constant) j["constant"] = *table.constant;
    return j;
}

// ---- output ----

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

bool is_rational(const json& v) { return v.is_object() && v.contains("decimal") && v.contains("num"); }

std::string rational_text(const json& v) {
    if (v["num"].is_null()) return v["decimal"].get<std::string>();
    // Human-facing formats keep long fractions to their decimal; JSON has them whole.
    constexpr std::size_t kInlineDigits = 40;
    std::string s = v["num"].get<std::string>();
    const std::string& den = v["den"].get_ref<const std::string&>();
    if (s.size() > kInlineDigits || den.size() > kInlineDigits)
        return v["decimal"].get<std::string>() + " (exact fraction: " + std::to_string(s.size()) + "/" +
               std::to_string(den.size()) + " digits)";
    if (v["den"].get<std::string>() != "1") s += "/" + v["den"].get<std::string>();
    return s + " (" + v["decimal"].get<std::string>() + ")";
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (is_rational(v)) {
        out.emplace_back(prefix, rational_text(v));
        return;
    }
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_object(); })) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
        return;
    }
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ' ';
            s += v[i].is_array() ? v[i].dump() : scalar_text(v[i]);
        }
        out.emplace_back(prefix, s);
        return;
    }
    out.emplace_back(prefix, scalar_text(v));
}

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void render(const json& doc, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> cfg;
    flatten(doc["config"], "", cfg);
    if (format == "text") {
        for (const auto& [k, v] : cfg) out << "# " << k << " = " << v << '\n';
        std::vector<std::pair<std::string, std::string>> body;
        flatten(doc["result"], "", body);
        for (const auto& [k, v] : body) out << k << ": " << v << '\n';
        return;
    }
    // csv
    for (const auto& [k, v] : cfg) out << "# " << k << '=' << v << '\n';
    const json& result = doc["result"];
    if (result.contains("rows")) {
        out << "size,box_parameter,num,den,decimal,ci_low,ci_high,error\n";
        for (const auto& row : result["rows"]) {
            std::string num, den, dec, lo, hi;
            if (row.contains("density")) {
                const auto& d = row["density"];
                num = scalar_text(d["num"]);
                den = scalar_text(d["den"]);
                dec = d["decimal"].get<std::string>();
            } else if (row.contains("sampled")) {
                const auto& s = row["sampled"];
                num = scalar_text(s["estimate"]["num"]);
                den = scalar_text(s["estimate"]["den"]);
                dec = s["estimate"]["decimal"].get<std::string>();
                lo = s["ci95"]["low"].get<std::string>();
                hi = s["ci95"]["high"].get<std::string>();
            }
            out << row["size"].dump() << ',' << row["box_parameter"].dump() << ',' << num << ',' << den << ','
                << dec << ',' << lo << ',' << hi << ','
                << csv_field(row.contains("error") ? row["error"].get<std::string>() : "") << '\n';
        }
        return;
    }
    if (result.contains("independence_counts") && !result.contains("interval")) {
        out << "k,i_k\n";
        const auto& counts = result["independence_counts"];
        for (std::size_t k = 0; k < counts.size(); ++k) out << k << ',' << counts[k].dump() << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> body;
    flatten(result, "", body);
    out << "key,value\n";
    for (const auto& [k, v] : body) out << csv_field(k) << ',' << csv_field(v) << '\n';
}

void add_common(CLI::App* sub, RunConfig& c, bool with_ring) {
    sub->add_option("--hypergraph", c.hypergraph,
                    "Hypergraph file or family: complete:m,j | path:m | cycle:m | edgeless:m,j")
        ->required();
    if (with_ring) sub->add_option("--ring", c.ring, "Z | Zi | Fq[x]:q=<n>[,mod=<poly>]");
    sub->add_option("--r", c.r, "Multiplicity exponent r >= 1");
    sub->add_option("--format", c.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--digits", c.digits, "Significant digits of decimal renderings");
    sub->add_option("--threads", c.threads, "Worker thread cap");
    sub->add_option("--budget", c.budget, "Enumeration budget (default 1e8, env HDENSITY_BUDGET)");
    sub->add_option("--max-exact-digits", c.max_exact_digits,
                    "Omit exact num/den strings longer than this (0 = never omit)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    if (const char* env = std::getenv("HDENSITY_BUDGET")) {
        try {
            c.budget = parse_u64(env, "HDENSITY_BUDGET");
        } catch (const InputError& e) {
            err << "error: " << e.what() << '\n';
            return kInputError;
        }
    }

    CLI::App app{"Densities of H-wise relatively r-prime tuples", "hdensity"};
    app.require_subcommand(1);

    auto* indep = app.add_subcommand("indep", "Independent-set counts i_0..i_m");
    add_common(indep, c, false);

    auto* theo = app.add_subcommand("theoretical", "Truncated Euler product with a rigorous enclosure");
    add_common(theo, c, true);
    theo->add_option("--cutoff", c.cutoff, "Prime bound (Z, Zi) or degree bound (Fq[x])")->required();

    auto* emp = app.add_subcommand("empirical", "Exact or sampled density over a finite box");
    add_common(emp, c, true);
    emp->add_option("--box", c.box, "Box parameter M (Z, Zi) or index bound N (Fq[x])")->required();
    emp->add_option("--box-mode", c.box_mode, "symmetric [-M,M) or classical [1,M] (Z only)");
    emp->add_option("--samples", c.samples, "Monte Carlo sample count");
    emp->add_flag("--enumerate", c.enumerate, "Monte Carlo report built by visiting every tuple once");
    emp->add_option("--seed", c.seed, "64-bit seed");

    auto* ver = app.add_subcommand("verify", "Exact check of the finite-S counting formulas");
    ver->require_subcommand(1);
    auto* p23 = ver->add_subcommand("prop23", "Counting formula over Z or Z[i] boxes O[qN]");
    add_common(p23, c, true);
    p23->add_option("--S", c.S, "Comma-separated rational primes")->required();
    p23->add_option("--q", c.q_scale, "Box scale q >= 1");
    auto* p33 = ver->add_subcommand("prop33", "Counting formula over F_q[x] index boxes");
    add_common(p33, c, true);
    p33->add_option("--S", c.S, "Comma-separated monic irreducibles")->required();
    p33->add_option("--b", c.b, "Box scale b >= 1");

    auto* sweep = app.add_subcommand("sweep", "Density table across box sizes");
    add_common(sweep, c, true);
    sweep->add_option("--sizes", c.sizes, "Comma-separated sizes (multipliers q or b with --S)")->required();
    sweep->add_option("--S", c.S, "Finite S-set: sweep E_S at sizes qN or b q^deg F - 1");
    sweep->add_option("--box-mode", c.box_mode, "symmetric or classical (Z only, full predicate)");
    sweep->add_option("--samples", c.samples, "Sample rows that exceed the budget");
    sweep->add_option("--seed", c.seed, "64-bit seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        const Renderer R(c.digits, c.max_exact_digits);
        json result;
        if (indep->parsed()) {
            c.command = "indep";
            result = cmd_indep(c, R);
        } else if (theo->parsed()) {
            c.command = "theoretical";
            result = cmd_theoretical(c, R);
        } else if (emp->parsed()) {
            c.command = "empirical";
            result = cmd_empirical(c, R);
        } else if (p23->parsed()) {
            c.command = "verify prop23";
            result = cmd_verify(c, R, true);
        } else if (p33->parsed()) {
            c.command = "verify prop33";
            result = cmd_verify(c, R, false);
        } else {
            c.command = "sweep";
            result = cmd_sweep(c, R);
        }
        json doc;
        doc["config"] = config_json(c);
        doc["result"] = result;
        render(doc, c.format, out);
        if (c.command.rfind("verify", 0) == 0 && !result["verification"]["equal"].get<bool>()) {
            err << "verification mismatch: counted != formula\n";
            return kVerificationMismatch;
        }
        if (c.command == "sweep" && result.contains("constant") && !result["constant"].get<bool>()) {
            err << "finite-S sweep is not constant\n";
            return kVerificationMismatch;
        }
        return kOk;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return kCapacityError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace hdensity::cli
