#include "hdensity/estimator.hpp"

#include "hdensity/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <thread>

namespace hdensity::estimator {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// n^m, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t n, int m) {
    std::uint64_t out = 1;
    for (int i = 0; i < m; ++i) {
        if (n != 0 && out > kU64Max / n) return kU64Max;
        out *= n;
    }
    return out;
}

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

template <class Fn>
void run_workers(unsigned threads, std::uint64_t jobs, const Fn& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(jobs, 1))));
    if (threads == 1) {
        fn(0u, 1u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&fn, t, threads] { fn(t, threads); });
    for (auto& th : pool) th.join();
}

// Visits every tuple of elems^m, splitting the first coordinate across workers.
template <class Elem, class Pred>
std::uint64_t count_tuples(const std::vector<Elem>& elems, int m, const Pred& pred, unsigned threads) {
    const std::uint64_t n = elems.size();
    if (n == 0) return 0;
    std::vector<std::uint64_t> partial(std::max(1u, threads), 0);
    run_workers(threads, n, [&](unsigned t, unsigned T) {
        const std::uint64_t lo = n * t / T, hi = n * (t + 1) / T;
        std::uint64_t hits = 0;
        std::vector<std::uint64_t> idx(static_cast<std::size_t>(m), 0);
        std::vector<Elem> tuple(static_cast<std::size_t>(m), elems[0]);
        for (std::uint64_t first = lo; first < hi; ++first) {
            std::fill(idx.begin(), idx.end(), 0);
            idx[0] = first;
            for (int v = 0; v < m; ++v) tuple[v] = elems[idx[v]];
            while (true) {
                if (pred(std::span<const Elem>(tuple))) ++hits;
                int v = m - 1;
                while (v >= 1) {
                    if (++idx[v] < n) {
                        tuple[v] = elems[idx[v]];
                        break;
                    }
                    idx[v] = 0;
                    tuple[v] = elems[0];
                    --v;
                }
                if (v < 1) break;
            }
        }
        partial[t] = hits;
    });
    std::uint64_t total = 0;
    for (auto h : partial) total += h;
    return total;
}

// Unbiased integer in [0, n) via multiply-shift with rejection.
std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
    unsigned __int128 prod = static_cast<unsigned __int128>(eng()) * n;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            prod = static_cast<unsigned __int128>(eng()) * n;
            low = static_cast<std::uint64_t>(prod);
        }
    }
    return static_cast<std::uint64_t>(prod >> 64);
}

template <class Elem, class At, class Pred>
std::uint64_t sample_hits(std::uint64_t box_size, int m, std::uint64_t samples, std::uint64_t seed,
                          const At& at, const Pred& pred, unsigned threads) {
    const std::uint64_t chunks = (samples + kSubstreamSize - 1) / kSubstreamSize;
    std::vector<std::uint64_t> partial(std::max(1u, threads), 0);
    run_workers(threads, chunks, [&](unsigned t, unsigned T) {
        std::uint64_t hits = 0;
        std::vector<Elem> tuple(static_cast<std::size_t>(m));
        for (std::uint64_t c = t; c < chunks; c += T) {
            std::mt19937_64 eng(splitmix64(seed ^ splitmix64(c)));
            const std::uint64_t count = std::min(kSubstreamSize, samples - c * kSubstreamSize);
            for (std::uint64_t s = 0; s < count; ++s) {
                for (int v = 0; v < m; ++v) tuple[v] = at(uniform_below(eng, box_size));
                if (pred(std::span<const Elem>(tuple))) ++hits;
            }
        }
        partial[t] = hits;
    });
    std::uint64_t total = 0;
    for (auto h : partial) total += h;
    return total;
}

// Calls fn(elements_or_at, predicate) for the ring of `box`.
template <class Fn>
auto dispatch_full(const Box& box, const Hypergraph& h, int r, const Fn& fn) {
    if (const auto* b = box.int_box()) {
        auto pred = [&h, r](std::span<const std::int64_t> t) { return integers::is_h_wise_r_prime(t, h, r); };
        auto at = [b](std::uint64_t i) { return b->at(i); };
        return fn(std::int64_t{}, at, pred);
    }
    if (const auto* b = box.gaussian_box()) {
        auto pred = [&h, r](std::span<const gaussian::GaussianInt> t) {
            return gaussian::is_h_wise_r_prime(t, h, r);
        };
        auto at = [b](std::uint64_t i) { return b->at(i); };
        return fn(gaussian::GaussianInt{}, at, pred);
    }
    const auto* b = box.poly_box();
    const fqx::FiniteField& F = *box.field();
    auto pred = [&F, &h, r](std::span<const fqx::Poly> t) { return fqx::is_h_wise_r_prime(F, t, h, r); };
    auto at = [b](std::uint64_t i) { return b->at(i); };
    return fn(fqx::Poly{}, at, pred);
}

template <class Elem, class At>
std::vector<Elem> materialize(std::uint64_t n, const At& at) {
    std::vector<Elem> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

void check_tuple_length(std::size_t len, const FiniteSSpec& spec) {
    if (static_cast<int>(len) != spec.h.m())
        throw InputError("tuple length " + std::to_string(len) + " != m = " + std::to_string(spec.h.m()));
}

bool signatures_ok(std::span<const std::uint32_t> sigs, std::size_t moduli, const Hypergraph& h) {
    for (std::size_t l = 0; l < moduli; ++l) {
        VertexMask zeros = 0;
        for (std::size_t v = 0; v < sigs.size(); ++v)
            if (sigs[v] >> l & 1) zeros |= VertexMask{1} << v;
        if (zeros == 0) continue;
        for (VertexMask e : h.edges())
            if ((e & zeros) == e) return false;
    }
    return true;
}

std::uint32_t signature(std::int64_t z, const FiniteSModuli& mod) {
    std::uint32_t sig = 0;
    for (std::size_t l = 0; l < mod.ints.size(); ++l)
        if (z % mod.ints[l] == 0) sig |= 1u << l;
    return sig;
}

std::uint32_t signature(const gaussian::GaussianInt& z, const FiniteSModuli& mod) {
    std::uint32_t sig = 0;
    for (std::size_t l = 0; l < mod.gaussians.size(); ++l)
        if (gaussian::divides(mod.gaussians[l], z)) sig |= 1u << l;
    return sig;
}

std::uint32_t signature(const fqx::Poly& z, const FiniteSModuli& mod) {
    std::uint32_t sig = 0;
    for (std::size_t l = 0; l < mod.polys.size(); ++l)
        if (fqx::divides(*mod.field, mod.polys[l], z)) sig |= 1u << l;
    return sig;
}

template <class Elem>
bool predicate_on(std::span<const Elem> z, const FiniteSSpec& spec) {
    check_tuple_length(z.size(), spec);
    const FiniteSModuli mod = finite_s_moduli(spec);
    std::vector<std::uint32_t> sigs;
    for (const auto& x : z) sigs.push_back(signature(x, mod));
    return signatures_ok(sigs, mod.size(), spec.h);
}

void check_ring(const Box& box, const FiniteSSpec& spec) {
    if (box.ring() != spec.ring) throw InputError("box ring does not match the S-set ring");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// ---- Box ----

Box Box::integers(integers::IntBox box) {
    box.size();  // validates M
    Box out;
    out.ring_ = RingKind::integers;
    out.box_ = box;
    return out;
}

Box Box::gaussian(gaussian::GaussianBox box) {
    box.size();
    Box out;
    out.ring_ = RingKind::gaussian;
    out.box_ = box;
    return out;
}

Box Box::fqx(std::shared_ptr<const fqx::FiniteField> field, std::uint64_t N) {
    if (!field) throw InputError("F_q[x] box needs a field");
    if (N == kU64Max) throw CapacityError("index bound too large");
    Box out;
    out.ring_ = RingKind::fqx;
    out.box_ = fqx::PolyBox{N, field->q()};
    out.field_ = std::move(field);
    return out;
}

std::uint64_t Box::size() const {
    return std::visit([](const auto& b) { return b.size(); }, box_);
}

std::uint64_t Box::parameter() const {
    if (const auto* b = int_box()) return static_cast<std::uint64_t>(b->M);
    if (const auto* b = gaussian_box()) return static_cast<std::uint64_t>(b->M);
    return poly_box()->N;
}

std::string Box::describe() const {
    if (const auto* b = int_box()) {
        const std::string M = std::to_string(b->M);
        return b->mode == integers::IntBox::Mode::symmetric ? "[-" + M + ", " + M + ")"
                                                             : "[1, " + M + "]";
    }
    if (const auto* b = gaussian_box()) {
        const std::string M = std::to_string(b->M);
        return "a+bi with a,b in [-" + M + ", " + M + ")";
    }
    return "f_0..f_" + std::to_string(poly_box()->N);
}

// ---- exhaustive / Monte Carlo ----

ExactCount exhaustive_density(const Box& box, const Hypergraph& h, int r, const RunOptions& opts) {
    if (r < 1) throw InputError("r must be >= 1");
    const std::uint64_t n = box.size();
    const std::uint64_t work = saturating_pow(n, h.m());
    if (work > opts.budget)
        throw CapacityError("exhaustive count needs " +
                            (work == kU64Max ? std::string(">2^64") : std::to_string(work)) +
                            " predicate evaluations, budget " + std::to_string(opts.budget) +
                            "; use Monte Carlo sampling (--samples)");
    ExactCount out;
    out.total = pow(big(n), static_cast<std::uint64_t>(h.m()));
    if (h.edgeless()) {
        out.hits = out.total;
        return out;
    }
    const std::uint64_t hits = dispatch_full(box, h, r, [&](auto tag, const auto& at, const auto& pred) {
        using Elem = decltype(tag);
        const auto elems = materialize<Elem>(n, at);
        return count_tuples(elems, h.m(), pred, opts.threads);
    });
    out.hits = big(hits);
    return out;
}

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t samples, double z) {
    if (samples == 0) return {0.0, 1.0};
    const double n = static_cast<double>(samples);
    const double phat = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    double low = std::max(0.0, center - half);
    double high = std::min(1.0, center + half);
    low = std::min(low, phat);
    high = std::max(high, phat);
    return {low, high};
}

SampleReport monte_carlo_density(const Box& box, const Hypergraph& h, int r, std::uint64_t samples,
                                 std::uint64_t seed, const RunOptions& opts, SamplingMode mode) {
    if (r < 1) throw InputError("r must be >= 1");
    SampleReport rep;
    rep.seed = seed;
    rep.mode = mode;
    if (mode == SamplingMode::enumerate) {
        const ExactCount ex = exhaustive_density(box, h, r, opts);
        rep.hits = ex.hits.get_ui();
        rep.samples = ex.total.get_ui();
    } else {
        if (samples < 1) throw InputError("samples must be >= 1");
        rep.samples = samples;
        if (h.edgeless()) {
            rep.hits = samples;
        } else {
            const std::uint64_t n = box.size();
            rep.hits = dispatch_full(box, h, r, [&](auto tag, const auto& at, const auto& pred) {
                using Elem = decltype(tag);
                return sample_hits<Elem>(n, h.m(), samples, seed, at, pred, opts.threads);
            });
        }
    }
    rep.estimate = make_rational(big(rep.hits), big(rep.samples));
    const auto ci = wilson_interval(rep.hits, rep.samples);
    rep.ci_low = ci.low;
    rep.ci_high = ci.high;
    return rep;
}

// ---- finite S ----

void FiniteSSpec::validate() const {
    if (r < 1) throw InputError("r must be >= 1");
    if (ring == RingKind::fqx) {
        if (!field) throw InputError("F_q[x] S-set needs a field");
        if (irreducibles.empty()) throw InputError("S must be nonempty");
        std::set<fqx::Poly> seen;
        for (const auto& f : irreducibles) {
            if (f.lead() != 1 || !fqx::is_irreducible(*field, f))
                throw InputError("S entry " + fqx::to_string(*field, f) + " is not a monic irreducible");
            if (!seen.insert(f).second) throw InputError("S entries must be distinct");
        }
        return;
    }
    if (primes.empty()) throw InputError("S must be nonempty");
    std::set<std::uint64_t> seen;
    for (auto p : primes) {
        bool prime = p >= 2;
        for (std::uint64_t d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
        if (!prime) throw InputError("S entry " + std::to_string(p) + " is not prime");
        if (!seen.insert(p).second) throw InputError("S entries must be distinct");
    }
}

FiniteSModuli finite_s_moduli(const FiniteSSpec& spec) {
    spec.validate();
    FiniteSModuli out{spec.ring, {}, {}, {}, spec.field, {}};
    const auto r = static_cast<std::uint64_t>(spec.r);
    switch (spec.ring) {
        case RingKind::integers:
            for (auto p : spec.primes) {
                const BigInt pr = pow(big(p), r);
                if (!pr.fits_slong_p()) throw CapacityError("p^r does not fit in 64 bits");
                out.ints.push_back(pr.get_si());
                out.norms.push_back(pr);
            }
            break;
        case RingKind::gaussian:
            for (auto p : spec.primes) {
                for (const auto& pi : gaussian::splitting(p).primes) {
                    gaussian::GaussianInt acc{1, 0};
                    for (std::uint64_t i = 0; i < r; ++i) acc = acc * pi;
                    out.gaussians.push_back(acc);
                    out.norms.push_back(pow(big(static_cast<std::uint64_t>(pi.norm())), r));
                }
            }
            break;
        case RingKind::fqx:
            for (const auto& f : spec.irreducibles) {
                out.polys.push_back(fqx::pow(*spec.field, f, r));
                out.norms.push_back(pow(big(spec.field->q()), r * static_cast<std::uint64_t>(f.degree())));
            }
            break;
    }
    if (out.size() > 20) throw CapacityError("at most 20 prime-power moduli supported");
    return out;
}

bool finite_s_predicate(std::span<const std::int64_t> z, const FiniteSSpec& spec) {
    if (spec.ring != RingKind::integers) throw InputError("S-set is not over Z");
    return predicate_on(z, spec);
}

bool finite_s_predicate(std::span<const gaussian::GaussianInt> z, const FiniteSSpec& spec) {
    if (spec.ring != RingKind::gaussian) throw InputError("S-set is not over Z[i]");
    return predicate_on(z, spec);
}

bool finite_s_predicate(std::span<const fqx::Poly> z, const FiniteSSpec& spec) {
    if (spec.ring != RingKind::fqx) throw InputError("S-set is not over F_q[x]");
    return predicate_on(z, spec);
}

BigInt count_finite_s(const Box& box, const FiniteSSpec& spec, const RunOptions& opts) {
    check_ring(box, spec);
    const FiniteSModuli mod = finite_s_moduli(spec);
    const std::uint64_t n = box.size();
    const int m = spec.h.m();
    if (n > opts.budget)
        throw CapacityError("box of " + std::to_string(n) + " elements exceeds budget " +
                            std::to_string(opts.budget));
    std::vector<std::uint64_t> hist(std::size_t{1} << mod.size(), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint32_t sig = 0;
        if (const auto* b = box.int_box()) sig = signature(b->at(i), mod);
        else if (const auto* b = box.gaussian_box()) sig = signature(b->at(i), mod);
        else sig = signature(box.poly_box()->at(i), mod);
        ++hist[sig];
    }
    std::vector<std::uint32_t> classes;
    for (std::uint32_t s = 0; s < hist.size(); ++s)
        if (hist[s]) classes.push_back(s);
    const std::uint64_t combos = saturating_pow(classes.size(), m);
    if (combos > opts.budget || n + combos > opts.budget)
        throw CapacityError("residue-class enumeration needs " + std::to_string(combos) +
                            " steps, budget " + std::to_string(opts.budget));
    BigInt total = 0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    std::vector<std::uint32_t> sigs(static_cast<std::size_t>(m));
    while (true) {
        BigInt weight = 1;
        for (int v = 0; v < m; ++v) {
            sigs[v] = classes[idx[v]];
            weight *= big(hist[sigs[v]]);
        }
        if (signatures_ok(sigs, mod.size(), spec.h)) total += weight;
        int v = m - 1;
        while (v >= 0 && ++idx[v] == classes.size()) idx[v--] = 0;
        if (v < 0) break;
    }
    return total;
}

BigInt count_finite_s_enumerated(const Box& box, const FiniteSSpec& spec, const RunOptions& opts) {
    check_ring(box, spec);
    spec.validate();
    const std::uint64_t n = box.size();
    const std::uint64_t work = saturating_pow(n, spec.h.m());
    if (work > opts.budget)
        throw CapacityError("tuple enumeration needs " + std::to_string(work) + " evaluations, budget " +
                            std::to_string(opts.budget));
    const std::uint64_t hits = dispatch_full(box, spec.h, spec.r, [&](auto tag, const auto& at, const auto&) {
        using Elem = decltype(tag);
        const auto elems = materialize<Elem>(n, at);
        auto pred = [&spec](std::span<const Elem> z) { return finite_s_predicate(z, spec); };
        return count_tuples(elems, spec.h.m(), pred, opts.threads);
    });
    return big(hits);
}

Rational finite_s_density(const FiniteSSpec& spec) {
    const FiniteSModuli mod = finite_s_moduli(spec);
    const IndepProfile profile = independence_counts(spec.h);
    Rational out = 1;
    for (const auto& norm : mod.norms) out *= local_factor(profile, Rational(BigInt(1), norm));
    return out;
}

namespace {

// sum_k i_k (n - 1)^(m-k) [times n^k when extra_power].
BigInt bracket(const IndepProfile& profile, const BigInt& n, bool extra_power) {
    const int m = profile.m();
    BigInt sum = 0;
    for (int k = 0; k <= m; ++k) {
        BigInt term = big(profile.counts[k]) * pow(BigInt(n - 1), static_cast<std::uint64_t>(m - k));
        if (extra_power) term *= pow(n, static_cast<std::uint64_t>(k));
        sum += term;
    }
    return sum;
}

}  // namespace

VerifyReport verify_number_ring_count(const FiniteSSpec& spec, std::uint64_t q_scale, const RunOptions& opts) {
    if (spec.ring == RingKind::fqx) throw InputError("prop23 applies to Z or Z[i]; use prop33 for F_q[x]");
    if (q_scale < 1) throw InputError("q_scale must be >= 1");
    spec.validate();
    const auto r = static_cast<std::uint64_t>(spec.r);
    const auto m = static_cast<std::uint64_t>(spec.h.m());
    const int n = spec.ring == RingKind::gaussian ? 2 : 1;
    BigInt N = 1;
    for (auto p : spec.primes) N *= pow(big(p), r);
    const BigInt Mbig = N * big(q_scale);
    if (!Mbig.fits_slong_p() || Mbig > BigInt(1L << 31)) throw CapacityError("box parameter qN too large");
    const std::int64_t M = Mbig.get_si();
    const Box box = spec.ring == RingKind::integers
                        ? Box::integers({M, integers::IntBox::Mode::symmetric})
                        : Box::gaussian({M});

    VerifyReport rep;
    rep.modulus = N;
    rep.box_parameter = static_cast<std::uint64_t>(M);
    rep.box_size = big(box.size());
    rep.field_degree = n;
    rep.scale = q_scale;
    rep.counted = count_finite_s(box, spec, opts);

    const IndepProfile profile = independence_counts(spec.h);
    BigInt formula = pow(big(2 * q_scale), m * static_cast<std::uint64_t>(n));
    BigInt extra = formula;
    for (auto p : spec.primes) {
        std::uint64_t Dp = 1;
        std::vector<BigInt> norms;
        if (spec.ring == RingKind::integers) {
            norms.push_back(big(p));
        } else {
            const auto s = gaussian::splitting(p);
            Dp = static_cast<std::uint64_t>(s.total_inertial_degree());
            for (std::size_t i = 0; i < s.primes.size(); ++i)
                norms.push_back(big(static_cast<std::uint64_t>(s.place_norm(i))));
        }
        const BigInt kernel = pow(big(p), r * m * (static_cast<std::uint64_t>(n) - Dp));
        formula *= kernel;
        extra *= kernel;
        for (const auto& nrm : norms) {
            const BigInt np = pow(nrm, r);
            formula *= bracket(profile, np, false);
            extra *= bracket(profile, np, true);
        }
    }
    rep.formula = formula;
    rep.extra_power_formula = extra;
    rep.equal = rep.counted == rep.formula;
    return rep;
}

VerifyReport verify_polynomial_count(const FiniteSSpec& spec, std::uint64_t b, const RunOptions& opts) {
    if (spec.ring != RingKind::fqx) throw InputError("prop33 applies to F_q[x]");
    if (b < 1) throw InputError("b must be >= 1");
    spec.validate();
    const auto r = static_cast<std::uint64_t>(spec.r);
    const auto m = static_cast<std::uint64_t>(spec.h.m());
    const BigInt q = big(spec.field->q());
    std::uint64_t degF = 0;
    for (const auto& f : spec.irreducibles) degF += r * static_cast<std::uint64_t>(f.degree());
    const BigInt side = big(b) * pow(q, degF);
    if (!side.fits_ulong_p() || side > BigInt(1UL << 40)) throw CapacityError("index bound b q^deg F too large");
    const std::uint64_t N = side.get_ui() - 1;
    const Box box = Box::fqx(spec.field, N);

    VerifyReport rep;
    rep.modulus = big(N);
    rep.box_parameter = N;
    rep.box_size = side;
    rep.field_degree = 1;
    rep.scale = b;
    rep.counted = count_finite_s(box, spec, opts);

    const IndepProfile profile = independence_counts(spec.h);
    Rational formula = Rational(pow(side, m));
    Rational extra = formula;
    for (const auto& f : spec.irreducibles) {
        const BigInt np = pow(q, r * static_cast<std::uint64_t>(f.degree()));
        const Rational kernel(BigInt(1), pow(np, m));
        formula *= kernel * Rational(bracket(profile, np, false));
        extra *= kernel * Rational(bracket(profile, np, true));
    }
    if (formula.get_den() != 1 || extra.get_den() != 1)
        throw ConsistencyError("counting formula did not evaluate to an integer");
    rep.formula = formula.get_num();
    rep.extra_power_formula = extra.get_num();
    rep.equal = rep.counted == rep.formula;
    return rep;
}

SweepTable convergence_sweep(const SweepRequest& req, const RunOptions& opts) {
    SweepTable table;
    std::optional<FiniteSModuli> mod;
    BigInt period = 1;
    if (req.finite_s) {
        if (req.finite_s->ring != req.ring) throw InputError("S-set ring does not match the sweep ring");
        mod = finite_s_moduli(*req.finite_s);
        if (req.ring == RingKind::fqx) {
            std::uint64_t degF = 0;
            for (const auto& f : req.finite_s->irreducibles)
                degF += static_cast<std::uint64_t>(req.finite_s->r) * static_cast<std::uint64_t>(f.degree());
            period = pow(big(req.field->q()), degF);
        } else {
            for (auto p : req.finite_s->primes) period *= pow(big(p), static_cast<std::uint64_t>(req.finite_s->r));
        }
        table.expected = finite_s_density(*req.finite_s);
    }
    for (auto size : req.sizes) {
        SweepRow row;
        row.size = size;
        try {
            if (size < 1) throw InputError("sweep sizes must be >= 1");
            std::uint64_t param = size;
            if (req.finite_s) {
                const BigInt p = big(size) * period - (req.ring == RingKind::fqx ? 1 : 0);
                if (!p.fits_ulong_p() || p > BigInt(1UL << 40)) throw CapacityError("box parameter too large");
                param = p.get_ui();
            }
            row.box_parameter = param;
            Box box = [&] {
                switch (req.ring) {
                    case RingKind::integers:
                        return Box::integers({static_cast<std::int64_t>(param),
                                              req.finite_s ? integers::IntBox::Mode::symmetric : req.int_mode});
                    case RingKind::gaussian: return Box::gaussian({static_cast<std::int64_t>(param)});
                    case RingKind::fqx: break;
                }
                return Box::fqx(req.field, param);
            }();
            if (req.finite_s) {
                const BigInt hits = count_finite_s(box, *req.finite_s, opts);
                row.density = make_rational(hits, pow(big(box.size()), static_cast<std::uint64_t>(req.finite_s->h.m())));
            } else {
                try {
                    row.density = exhaustive_density(box, req.h, req.r, opts).density();
                } catch (const CapacityError&) {
                    if (!req.samples) throw;
                    row.sampled = monte_carlo_density(box, req.h, req.r, *req.samples, req.seed, opts);
                }
            }
        } catch (const CapacityError& e) {
            row.error = std::string("capacity: ") + e.what();
        }
        table.rows.push_back(std::move(row));
    }
    if (req.finite_s) {
        bool all = !table.rows.empty();
        for (const auto& row : table.rows) all = all && row.density && *row.density == *table.expected;
        table.constant = all;
    }
    return table;
}

}  // namespace hdensity::estimator
