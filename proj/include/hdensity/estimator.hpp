#pragma once

#include "hdensity/density.hpp"
#include "hdensity/fqx.hpp"
#include "hdensity/gaussian.hpp"
#include "hdensity/hypergraph.hpp"
#include "hdensity/integers.hpp"
#include "hdensity/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hdensity::estimator {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;
// Two-sided 95% standard normal quantile used by the Wilson interval.
inline constexpr double kWilsonZ95 = 1.959964;
// Samples per pseudo-random substream; independent of the thread count.
inline constexpr std::uint64_t kSubstreamSize = 1 << 16;

struct RunOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
};

// A finite box of ring elements: IntBox / GaussianBox, or f_0..f_N in F_q[x].
class Box {
public:
    static Box integers(integers::IntBox box);
    static Box gaussian(gaussian::GaussianBox box);
    static Box fqx(std::shared_ptr<const fqx::FiniteField> field, std::uint64_t N);

    RingKind ring() const noexcept { return ring_; }
    std::uint64_t size() const;
    // M for number rings, N for F_q[x].
    std::uint64_t parameter() const;
    std::string describe() const;

    const integers::IntBox* int_box() const { return std::get_if<integers::IntBox>(&box_); }
    const gaussian::GaussianBox* gaussian_box() const {
        return std::get_if<gaussian::GaussianBox>(&box_);
    }
    const fqx::PolyBox* poly_box() const { return std::get_if<fqx::PolyBox>(&box_); }
    const std::shared_ptr<const fqx::FiniteField>& field() const { return field_; }

private:
    RingKind ring_ = RingKind::integers;
    std::variant<integers::IntBox, gaussian::GaussianBox, fqx::PolyBox> box_;
    std::shared_ptr<const fqx::FiniteField> field_;
};

struct ExactCount {
    BigInt hits;
    BigInt total;
    Rational density() const { return make_rational(hits, total); }
};

// Exact ratio of H-wise r-prime tuples in box^m. Throws CapacityError when
// |box|^m exceeds the budget.
ExactCount exhaustive_density(const Box& box, const Hypergraph& h, int r,
                              const RunOptions& opts = {});

enum class SamplingMode { random, enumerate };

struct SampleReport {
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    Rational estimate;
    double ci_low = 0;
    double ci_high = 1;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::random;
};

struct WilsonInterval {
    double low;
    double high;
};
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t samples, double z = kWilsonZ95);

// Uniform i.i.d. tuples from box^m. Substream c (samples c*2^16 ...) draws
// from std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(c)); indices
// use unbiased multiply-shift rejection. In enumerate mode every tuple of
// box^m is visited once and `samples` is ignored.
SampleReport monte_carlo_density(const Box& box, const Hypergraph& h, int r,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const RunOptions& opts = {},
                                 SamplingMode mode = SamplingMode::random);

std::uint64_t splitmix64(std::uint64_t x);

// Finite set S of rational primes (Z, Z[i]) or monic irreducibles (F_q[x]).
struct FiniteSSpec {
    RingKind ring = RingKind::integers;
    std::vector<std::uint64_t> primes;
    std::vector<fqx::Poly> irreducibles;
    std::shared_ptr<const fqx::FiniteField> field;
    int r = 1;
    Hypergraph h = edgeless(2, 2);

    // Throws InputError for empty S, repeats, non-primes or reducible entries.
    void validate() const;
};

// The prime-power moduli derived from S: p^r, pi^r for each Gaussian
// prime above p, or f^r.
struct FiniteSModuli {
    RingKind ring;
    std::vector<std::int64_t> ints;
    std::vector<gaussian::GaussianInt> gaussians;
    std::vector<fqx::Poly> polys;
    std::shared_ptr<const fqx::FiniteField> field;
    std::vector<BigInt> norms;  // N(place)^r for each modulus

    std::size_t size() const { return norms.size(); }
};
FiniteSModuli finite_s_moduli(const FiniteSSpec& spec);

// Membership in E_S: for every modulus, the coordinates it divides form an
// independent set of H.
bool finite_s_predicate(std::span<const std::int64_t> z, const FiniteSSpec& spec);
bool finite_s_predicate(std::span<const gaussian::GaussianInt> z, const FiniteSSpec& spec);
bool finite_s_predicate(std::span<const fqx::Poly> z, const FiniteSSpec& spec);

// |E_S cap box^m|. Classifies each box element by which moduli divide it and
// sums class-size products over the class tuples satisfying the predicate;
// the work is |box| + (2^L)^m for L moduli and is checked against the budget.
BigInt count_finite_s(const Box& box, const FiniteSSpec& spec, const RunOptions& opts = {});

// Same count by visiting every tuple of box^m (budget: |box|^m).
BigInt count_finite_s_enumerated(const Box& box, const FiniteSSpec& spec,
                                 const RunOptions& opts = {});

// Product of local factors over the places above S.
Rational finite_s_density(const FiniteSSpec& spec);

struct VerifyReport {
    BigInt counted;
    BigInt formula;
    // Same product with an extra N(p^r)^k in every bracket term, kept to show
    // that this variant disagrees with the count.
    BigInt extra_power_formula;
    bool equal = false;
    BigInt modulus;   // N = prod p^r, or the index bound N = b q^deg F - 1
    std::uint64_t box_parameter = 0;
    BigInt box_size;
    int field_degree = 1;  // n
    std::uint64_t scale = 1;  // q_scale or b
};

// Z or Z[i]: box O[qN] with N = prod_{p in S} p^r.
VerifyReport verify_number_ring_count(const FiniteSSpec& spec, std::uint64_t q_scale,
                             const RunOptions& opts = {});
// F_q[x]: M_N with N = b q^deg F - 1, F = prod f^r.
VerifyReport verify_polynomial_count(const FiniteSSpec& spec, std::uint64_t b,
                             const RunOptions& opts = {});

struct SweepRequest {
    RingKind ring = RingKind::integers;
    std::shared_ptr<const fqx::FiniteField> field;
    integers::IntBox::Mode int_mode = integers::IntBox::Mode::symmetric;
    Hypergraph h = edgeless(2, 2);
    int r = 1;
    // Full predicate: box parameters (M or N). Finite-S: multipliers q or b.
    std::vector<std::uint64_t> sizes;
    std::optional<FiniteSSpec> finite_s;
    // Fall back to sampling when a full-predicate row exceeds the budget.
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
};

struct SweepRow {
    std::uint64_t size = 0;
    std::uint64_t box_parameter = 0;
    std::optional<Rational> density;
    std::optional<SampleReport> sampled;
    std::optional<std::string> error;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    // Finite-S only: every row equal to `expected`.
    std::optional<bool> constant;
    std::optional<Rational> expected;
};

SweepTable convergence_sweep(const SweepRequest& req, const RunOptions& opts = {});

}  // namespace hdensity::estimator
