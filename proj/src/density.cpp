#include "hdensity/density.hpp"

#include "hdensity/errors.hpp"

namespace hdensity {

namespace {

constexpr double kMaxProductBits = 2e9;

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / i;
    return out;
}

void check_unit_interval(const Rational& x) {
    if (x < 0 || x > 1) throw InputError("local factor argument must lie in [0, 1]");
}

unsigned long smallest_prime_factor(const BigInt& n) {
    if (!n.fits_ulong_p()) return 0;
    const unsigned long v = n.get_ui();
    for (unsigned long d = 2; d * d <= v; ++d)
        if (v % d == 0) return d;
    return v;
}

}  // namespace

std::string ring_name(RingKind kind) {
    switch (kind) {
        case RingKind::integers: return "Z";
        case RingKind::gaussian: return "Zi";
        case RingKind::fqx: return "Fq[x]";
    }
    return "?";
}

ProblemSpec::ProblemSpec(Hypergraph h, int r)
    : h_(std::move(h)), profile_(independence_counts(h_)), r_(r) {
    if (r < 1) throw InputError("multiplicity exponent r must be >= 1");
}

std::uint64_t Place::cutoff_key() const {
    if (const auto* z = std::get_if<RationalPrimePlace>(&descriptor)) return z->p;
    if (const auto* g = std::get_if<GaussianPlace>(&descriptor)) return g->p;
    return static_cast<std::uint64_t>(std::get<DegreeClass>(descriptor).degree);
}

std::tuple<std::uint64_t, std::int64_t, std::int64_t> Place::order_key() const {
    if (const auto* g = std::get_if<GaussianPlace>(&descriptor)) return {g->p, g->re, g->im};
    return {cutoff_key(), 0, 0};
}

Rational local_factor(const IndepProfile& profile, const Rational& x) {
    check_unit_interval(x);
    const int m = profile.m();
    const Rational y = 1 - x;
    Rational sum = 0;
    Rational xk = 1;
    for (int k = 0; k <= m; ++k) {
        if (profile.counts[k] != 0)
            sum += Rational(BigInt(std::to_string(profile.counts[k]))) * xk *
                   pow(y, static_cast<std::uint64_t>(m - k));
        xk *= x;
    }
    return sum;
}

BigInt local_factor_numerator(const IndepProfile& profile, const BigInt& norm_power) {
    const int m = profile.m();
    const BigInt base = norm_power - 1;
    // Horner in (n-1): sum_k i_k (n-1)^(m-k) = (((i_0)(n-1) + i_1)(n-1) + ...) + i_m.
    BigInt acc = 0;
    for (int k = 0; k <= m; ++k) {
        acc *= base;
        acc += BigInt(std::to_string(profile.counts[k]));
    }
    return acc;
}

Rational local_factor_complete(int m, int j, const Rational& x) {
    if (j < 2 || j > m) throw InputError("closed form requires 2 <= j <= m");
    check_unit_interval(x);
    const Rational y = 1 - x;
    Rational sum = 0;
    for (int k = 0; k < j; ++k)
        sum += Rational(BigInt(std::to_string(binomial(m, k)))) *
               pow(x, static_cast<std::uint64_t>(k)) *
               pow(y, static_cast<std::uint64_t>(m - k));
    return sum;
}

Rational tail_bound_numberfield(int m, int r, int field_degree, std::uint64_t prime_cutoff) {
    if (m < 1 || r < 1 || field_degree < 1) throw InputError("tail bound needs m, r, n >= 1");
    if (prime_cutoff < 2) throw InputError("prime cutoff must be >= 2");
    if (m == 1) return 0;
    if (static_cast<long>(r) * m < 2)
        throw InputError("tail bound unsupported for r*m < 2 (divergent regime)");
    const BigInt mm1 = m - 1;
    const BigInt num = BigInt(field_degree) * mm1 * mm1;
    const BigInt den = BigInt(2 * r - 1) *
                       pow(BigInt(std::to_string(prime_cutoff)),
                           static_cast<std::uint64_t>(2 * r - 1));
    return make_rational(num, den);
}

Rational tail_bound_fqx(int m, int r, std::uint64_t q, int degree_cutoff) {
    if (m < 1 || r < 1) throw InputError("tail bound needs m, r >= 1");
    if (q < 2) throw InputError("field size q must be >= 2");
    if (degree_cutoff < 1) throw InputError("degree cutoff must be >= 1");
    if (m == 1) return 0;
    if (static_cast<long>(r) * m < 2)
        throw InputError("tail bound unsupported for r*m < 2 (divergent regime)");
    const BigInt qq(std::to_string(q));
    const BigInt mm1 = m - 1;
    return make_rational(mm1 * mm1, pow(qq, static_cast<std::uint64_t>(degree_cutoff)) * (qq - 1));
}

DensityInterval euler_product(const ProblemSpec& spec, std::span<const Place> places,
                              std::uint64_t cutoff, const Rational& tail) {
    const auto m = static_cast<std::uint64_t>(spec.m());
    const auto r = static_cast<std::uint64_t>(spec.r());
    std::vector<BigInt> nums;
    std::vector<BigInt> dens;
    nums.reserve(places.size());
    dens.reserve(places.size());
    bool single_prime = !places.empty() && places.front().ring == RingKind::fqx;
    for (std::size_t i = 0; i < places.size(); ++i) {
        const Place& pl = places[i];
        if (pl.norm < 2 || pl.multiplicity < 1)
            throw ConsistencyError("place with norm < 2 or zero multiplicity");
        if (pl.cutoff_key() > cutoff)
            throw ConsistencyError("place beyond the truncation cutoff");
        if (i > 0) {
            if (pl.ring != places[i - 1].ring)
                throw ConsistencyError("place stream mixes rings");
            if (!(places[i - 1].order_key() < pl.order_key()))
                throw ConsistencyError("place stream out of order or duplicated");
        }
        // Cap the size of a single factor before raising it to its multiplicity.
        const double factor_bits = static_cast<double>(mpz_sizeinbase(pl.norm.get_mpz_t(), 2)) *
                                   static_cast<double>(r * m) * static_cast<double>(pl.multiplicity);
        if (factor_bits > kMaxProductBits)
            throw CapacityError("exact product too large at place " + std::to_string(i) +
                                " (about " + std::to_string(static_cast<long long>(factor_bits)) +
                                " bits); lower the cutoff");
        const BigInt n = pow(pl.norm, r);
        BigInt num = local_factor_numerator(spec.profile(), n);
        BigInt den = pow(n, m);
        if (pl.multiplicity > 1) {
            num = pow(num, pl.multiplicity);
            den = pow(den, pl.multiplicity);
        }
        nums.push_back(std::move(num));
        dens.push_back(std::move(den));
    }
    DensityInterval out;
    out.cutoff = cutoff;
    out.places_used = places.size();
    // Every F_q[x] norm is a power of the characteristic, so only that prime
    // can cancel between numerator and denominator.
    const unsigned long prime = single_prime ? smallest_prime_factor(places.front().norm) : 0;
    out.upper = make_rational(product(nums), product(dens), prime);
    if (spec.divergent_regime()) {
        out.lower = 0;
        out.tail_bound = 1;
        out.warning = "r*m < 2: product may diverge to 0; no rigorous tail bound, lower set to 0";
        return out;
    }
    out.tail_bound = tail;
    if (tail >= 1) {
        out.lower = 0;
    } else {
        out.lower = out.upper * (1 - tail);
        if (out.lower < 0) out.lower = 0;
    }
    return out;
}

}  // namespace hdensity
