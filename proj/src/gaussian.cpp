#include "hdensity/gaussian.hpp"

#include "hdensity/errors.hpp"
#include "hdensity/integers.hpp"

#include <algorithm>
#include <charconv>

namespace hdensity::gaussian {

namespace {

using i128 = __int128;

// round(a / n) for n > 0, halves rounded up.
std::int64_t round_div(i128 a, i128 n) {
    i128 q = (2 * a + n) / (2 * n);
    if ((2 * a + n) % (2 * n) != 0 && (2 * a + n) < 0) --q;
    return static_cast<std::int64_t>(q);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t mod) {
    unsigned __int128 acc = 1, base = b % mod;
    while (e) {
        if (e & 1) acc = acc * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace

DivMod divmod(GaussianInt x, GaussianInt y) {
    if (y.is_zero()) throw DomainError("Gaussian division by zero");
    const i128 n = static_cast<i128>(y.re) * y.re + static_cast<i128>(y.im) * y.im;
    // x * conj(y)
    const i128 a = static_cast<i128>(x.re) * y.re + static_cast<i128>(x.im) * y.im;
    const i128 b = static_cast<i128>(x.im) * y.re - static_cast<i128>(x.re) * y.im;
    const GaussianInt q{round_div(a, n), round_div(b, n)};
    return {q, x - q * y};
}

bool divides(GaussianInt d, GaussianInt x) {
    if (d.is_zero()) return x.is_zero();
    return divmod(x, d).remainder.is_zero();
}

GaussianInt normalize(GaussianInt x) {
    if (x.is_zero()) return x;
    // Rotate by i until re > 0 and im >= 0.
    for (int k = 0; k < 4; ++k) {
        if (x.re > 0 && x.im >= 0) return x;
        x = GaussianInt{-x.im, x.re};
    }
    return x;
}

GaussianInt gaussian_gcd(GaussianInt x, GaussianInt y) {
    while (!y.is_zero()) {
        const GaussianInt r = divmod(x, y).remainder;
        x = y;
        y = r;
    }
    return normalize(x);
}

GaussianInt gaussian_gcd(std::span<const GaussianInt> xs) {
    GaussianInt g{0, 0};
    for (const auto& x : xs) g = gaussian_gcd(g, x);
    return g;
}

int Splitting::total_inertial_degree() const {
    int d = 0;
    for (int f : inertial_degrees) d += f;
    return d;
}

std::int64_t Splitting::place_norm(std::size_t i) const { return primes.at(i).norm(); }

Splitting splitting(std::uint64_t p) {
    using Kind = GaussianPlace::Kind;
    if (p < 2) throw InputError("splitting requires a prime");
    if (p == 2) return {2, Kind::ramified, {GaussianInt{1, 1}}, {1}, 2};
    const auto sp = static_cast<std::int64_t>(p);
    if (p % 4 == 3) return {p, Kind::inert, {GaussianInt{sp, 0}}, {2}, 1};
    // p = 1 mod 4: t^2 = -1 (mod p), then gcd(p, t + i) is a prime above p.
    std::uint64_t t = 0;
    for (std::uint64_t c = 2; c < p; ++c) {
        t = powmod(c, (p - 1) / 4, p);
        if (static_cast<unsigned __int128>(t) * t % p == p - 1) break;
    }
    const GaussianInt pi = gaussian_gcd(GaussianInt{sp, 0}, GaussianInt{static_cast<std::int64_t>(t), 1});
    std::vector<GaussianInt> primes{pi, normalize(pi.conj())};
    std::sort(primes.begin(), primes.end(), [](GaussianInt a, GaussianInt b) {
        return std::pair(a.re, a.im) < std::pair(b.re, b.im);
    });
    return {p, Kind::split, primes, {1, 1}, 1};
}

std::vector<Place> gaussian_places(std::uint64_t limit) {
    if (limit < 2) throw InputError("prime cutoff must be >= 2");
    std::vector<Place> out;
    for (std::uint64_t p : integers::primes_up_to_list(limit)) {
        const Splitting s = splitting(p);
        for (const auto& pi : s.primes)
            out.push_back(Place{RingKind::gaussian,
                                BigInt(static_cast<unsigned long>(pi.norm())), 1,
                                GaussianPlace{p, s.kind, pi.re, pi.im}});
    }
    return out;
}

int valuation(GaussianInt x, GaussianInt pi) {
    if (x.is_zero()) throw DomainError("valuation of zero");
    int v = 0;
    while (true) {
        const DivMod dm = divmod(x, pi);
        if (!dm.remainder.is_zero()) return v;
        x = dm.quotient;
        ++v;
    }
}

bool is_r_power_free(GaussianInt g, int r) {
    if (r < 1) throw InputError("r must be >= 1");
    if (g.is_zero()) return false;
    std::uint64_t n = static_cast<std::uint64_t>(g.norm());
    auto check_prime = [&](std::uint64_t p) {
        const Splitting s = splitting(p);
        return std::all_of(s.primes.begin(), s.primes.end(),
                           [&](GaussianInt pi) { return valuation(g, pi) < r; });
    };
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        if (!check_prime(p)) return false;
    }
    if (n > 1 && !check_prime(n)) return false;
    return true;
}

bool is_h_wise_r_prime(std::span<const GaussianInt> tuple, const Hypergraph& h, int r) {
    if (static_cast<int>(tuple.size()) != h.m())
        throw InputError("tuple length " + std::to_string(tuple.size()) + " != m = " +
                         std::to_string(h.m()));
    for (VertexMask e : h.edges()) {
        GaussianInt g{0, 0};
        for (int v = 0; v < h.m(); ++v) {
            if (!(e >> v & 1)) continue;
            g = gaussian_gcd(g, tuple[static_cast<std::size_t>(v)]);
            if (g == GaussianInt{1, 0}) break;
        }
        if (g == GaussianInt{1, 0}) continue;
        if (!is_r_power_free(g, r)) return false;
    }
    return true;
}

std::uint64_t GaussianBox::size() const {
    if (M < 1) throw InputError("box parameter M must be >= 1");
    const auto side = 2 * static_cast<std::uint64_t>(M);
    return side * side;
}

GaussianInt GaussianBox::at(std::uint64_t index) const {
    const auto side = 2 * static_cast<std::uint64_t>(M);
    return {-M + static_cast<std::int64_t>(index / side), -M + static_cast<std::int64_t>(index % side)};
}

std::vector<GaussianInt> GaussianBox::elements() const {
    std::vector<GaussianInt> out(size());
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = at(i);
    return out;
}

std::string to_string(GaussianInt x) {
    std::string out = std::to_string(x.re);
    out += x.im < 0 ? '-' : '+';
    out += std::to_string(x.im < 0 ? -x.im : x.im);
    out += 'i';
    return out;
}

GaussianInt parse_gaussian(const std::string& text) {
    auto fail = [&]() -> GaussianInt { throw InputError("bad Gaussian integer '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) return fail();
    auto parse_int = [&](std::string_view t, std::int64_t& out) {
        if (t.empty()) return false;
        if (t.front() == '+') t.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
        return ec == std::errc{} && ptr == t.data() + t.size();
    };
    if (s.back() != 'i') {
        std::int64_t a = 0;
        if (!parse_int(s, a)) return fail();
        return {a, 0};
    }
    s.pop_back();
    // Split at the last sign that is not the leading character.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    std::string real_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string imag_part = split == std::string::npos ? s : s.substr(split);
    std::int64_t a = 0, b = 0;
    if (!real_part.empty() && !parse_int(real_part, a)) return fail();
    if (imag_part.empty() || imag_part == "+") b = 1;
    else if (imag_part == "-") b = -1;
    else if (!parse_int(imag_part, b)) return fail();
    return {a, b};
}

}  // namespace hdensity::gaussian
