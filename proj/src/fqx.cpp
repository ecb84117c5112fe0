#include "hdensity/fqx.hpp"

#include "hdensity/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace hdensity::fqx {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t out = 1;
    for (int i = 0; i < e; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / b)
            throw CapacityError("integer power overflows 64 bits");
        out *= b;
    }
    return out;
}

// Dense polynomials over F_p for building extension-field tables.
using Digits = std::vector<std::uint32_t>;

Digits digits_of(std::uint64_t code, std::uint32_t p, int k) {
    Digits d(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        d[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return d;
}

std::uint64_t code_of(const Digits& d, std::uint32_t p) {
    std::uint64_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
    return code;
}

// a * b mod modulus over F_p, with a, b of length k.
Digits mul_mod_digits(const Digits& a, const Digits& b, const std::vector<std::uint32_t>& modulus,
                      std::uint32_t p) {
    const std::size_t k = a.size();
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    // modulus is monic of degree k: y^k = -sum_{i<k} modulus[i] y^i.
    for (std::size_t d = 2 * k; d-- > k;) {
        const std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (std::size_t i = 0; i < k; ++i)
            prod[d - k + i] = (prod[d - k + i] + (p - modulus[i]) % p * c) % p;
    }
    Digits out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

int mobius(int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

Poly poly_from_digits(const std::vector<std::uint32_t>& d) {
    return Poly(std::vector<Element>(d.begin(), d.end()));
}

}  // namespace

// ---- field ----

std::uint64_t FieldSpec::q() const { return ipow(p, k); }

FieldSpec make_field_spec(std::uint64_t q, std::optional<std::vector<std::uint32_t>> modulus) {
    if (q < 2) throw InputError("field order q must be >= 2");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;
    int k = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) throw InputError("q = " + std::to_string(q) + " is not a prime power");
    if (p > std::numeric_limits<std::uint32_t>::max() / 2)
        throw InputError("characteristic too large");
    FieldSpec spec{static_cast<std::uint32_t>(p), k, {}};
    if (k == 1) {
        if (modulus && !modulus->empty())
            throw InputError("a modulus is only meaningful for extension fields");
        return spec;
    }
    if (q > kMaxExtensionOrder)
        throw CapacityError("extension fields limited to q <= " + std::to_string(kMaxExtensionOrder));
    const FiniteField base(FieldSpec{spec.p, 1, {}});
    if (modulus) {
        auto m = *modulus;
        if (m.size() != static_cast<std::size_t>(k) + 1 || m.back() != 1)
            throw InputError("modulus must be monic of degree " + std::to_string(k));
        for (auto c : m)
            if (c >= p) throw InputError("modulus coefficient out of range");
        if (!is_irreducible(base, poly_from_digits(m)))
            throw InputError("modulus is reducible over F_" + std::to_string(p));
        spec.modulus = std::move(m);
        return spec;
    }
    // Lexicographic order on (c_0, ..., c_{k-1}): c_0 is the most significant.
    const std::uint64_t count = ipow(p, k);
    for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<std::uint32_t> m(static_cast<std::size_t>(k) + 1);
        std::uint64_t v = t;
        for (int i = k - 1; i >= 0; --i) {
            m[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        m[k] = 1;
        if (is_irreducible(base, poly_from_digits(m))) {
            spec.modulus = std::move(m);
            return spec;
        }
    }
    throw DomainError("no irreducible modulus found");  // unreachable
}

FiniteField::FiniteField(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.q()) {
    if (!is_prime_u64(spec_.p)) throw InputError("characteristic must be prime");
    if (spec_.k < 1) throw InputError("extension degree must be >= 1");
    if (spec_.k == 1) return;
    const auto k = spec_.k;
    if (spec_.modulus.size() != static_cast<std::size_t>(k) + 1)
        throw InputError("extension field needs a degree-k modulus");
    if (q_ > kMaxExtensionOrder)
        throw CapacityError("extension fields limited to q <= " + std::to_string(kMaxExtensionOrder));
    const auto order = q_ - 1;
    const auto factors = prime_factors(order);
    auto slow_pow = [&](const Digits& a, std::uint64_t e) {
        Digits acc = digits_of(1, spec_.p, k), base = a;
        while (e) {
            if (e & 1) acc = mul_mod_digits(acc, base, spec_.modulus, spec_.p);
            base = mul_mod_digits(base, base, spec_.modulus, spec_.p);
            e >>= 1;
        }
        return acc;
    };
    const Digits one = digits_of(1, spec_.p, k);
    Digits gen;
    for (std::uint64_t c = 2; c < q_; ++c) {
        const Digits g = digits_of(c, spec_.p, k);
        bool primitive = true;
        for (auto l : factors)
            if (slow_pow(g, order / l) == one) {
                primitive = false;
                break;
            }
        if (primitive) {
            gen = g;
            break;
        }
    }
    if (q_ == 2) gen = one;
    if (gen.empty()) throw DomainError("no primitive element found (modulus not irreducible?)");
    exp_.assign(order, 0);
    log_.assign(q_, 0);
    Digits cur = one;
    for (std::uint64_t i = 0; i < order; ++i) {
        const auto code = static_cast<std::uint32_t>(code_of(cur, spec_.p));
        exp_[i] = code;
        log_[code] = static_cast<std::uint32_t>(i);
        cur = mul_mod_digits(cur, gen, spec_.modulus, spec_.p);
    }
}

Element FiniteField::add(Element a, Element b) const {
    if (spec_.k == 1) return static_cast<Element>((std::uint64_t{a} + b) % spec_.p);
    if (spec_.p == 2) return a ^ b;
    Element out = 0, place = 1;
    for (int i = 0; i < spec_.k; ++i) {
        out += ((a % spec_.p + b % spec_.p) % spec_.p) * place;
        a /= spec_.p;
        b /= spec_.p;
        place *= spec_.p;
    }
    return out;
}

Element FiniteField::neg(Element a) const {
    if (spec_.k == 1) return a == 0 ? 0 : spec_.p - a;
    if (spec_.p == 2) return a;
    Element out = 0, place = 1;
    for (int i = 0; i < spec_.k; ++i) {
        out += ((spec_.p - a % spec_.p) % spec_.p) * place;
        a /= spec_.p;
        place *= spec_.p;
    }
    return out;
}

Element FiniteField::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FiniteField::mul(Element a, Element b) const {
    if (spec_.k == 1) return static_cast<Element>(std::uint64_t{a} * b % spec_.p);
    if (a == 0 || b == 0) return 0;
    const auto order = q_ - 1;
    return exp_[(std::uint64_t{log_[a]} + log_[b]) % order];
}

Element FiniteField::inv(Element a) const {
    if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
    if (spec_.k == 1) return pow(a, spec_.p - 2);
    const auto order = q_ - 1;
    return exp_[(order - log_[a]) % order];
}

Element FiniteField::pow(Element a, std::uint64_t e) const {
    Element acc = 1, base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

Element FiniteField::pth_root(Element a) const { return pow(a, q_ / spec_.p); }

// ---- polynomials ----

Poly::Poly(std::vector<Element> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(Element c, std::size_t degree) {
    std::vector<Element> v(degree + 1, 0);
    v[degree] = c;
    return Poly(std::move(v));
}

Poly add(const FiniteField& F, const Poly& a, const Poly& b) {
    const auto n = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<Element> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = F.add(a.coeff(i), b.coeff(i));
    return Poly(std::move(out));
}

Poly sub(const FiniteField& F, const Poly& a, const Poly& b) {
    const auto n = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<Element> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = F.sub(a.coeff(i), b.coeff(i));
    return Poly(std::move(out));
}

Poly mul(const FiniteField& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto ac = a.coeffs(), bc = b.coeffs();
    std::vector<Element> out(ac.size() + bc.size() - 1, 0);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0) continue;
        for (std::size_t j = 0; j < bc.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(ac[i], bc[j]));
    }
    return Poly(std::move(out));
}

Poly scale(const FiniteField& F, const Poly& a, Element c) {
    std::vector<Element> out(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : out) x = F.mul(x, c);
    return Poly(std::move(out));
}

std::pair<Poly, Poly> divmod(const FiniteField& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Element> rem(a.coeffs().begin(), a.coeffs().end());
    const auto bc = b.coeffs();
    const int db = b.degree();
    const Element lead_inv = F.inv(b.lead());
    std::vector<Element> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    for (int d = a.degree(); d >= db; --d) {
        const Element c = rem[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        const Element t = F.mul(c, lead_inv);
        quot[static_cast<std::size_t>(d - db)] = t;
        for (int i = 0; i <= db; ++i) {
            auto& slot = rem[static_cast<std::size_t>(d - db + i)];
            slot = F.sub(slot, F.mul(t, bc[static_cast<std::size_t>(i)]));
        }
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly mod(const FiniteField& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Poly monic(const FiniteField& F, const Poly& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    return scale(F, a, F.inv(a.lead()));
}

Poly gcd(const FiniteField& F, const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = mod(F, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(F, x);
}

Poly derivative(const FiniteField& F, const Poly& a) {
    if (a.degree() < 1) return {};
    std::vector<Element> out(static_cast<std::size_t>(a.degree()));
    for (std::size_t i = 1; i < a.coeffs().size(); ++i)
        out[i - 1] = F.mul(F.from_integer(i), a.coeff(i));
    return Poly(std::move(out));
}

Poly pow(const FiniteField& F, const Poly& a, std::uint64_t e) {
    Poly acc = Poly::constant(1), base = a;
    while (e) {
        if (e & 1) acc = mul(F, acc, base);
        e >>= 1;
        if (e) base = mul(F, base, base);
    }
    return acc;
}

Poly powmod(const FiniteField& F, const Poly& a, std::uint64_t e, const Poly& modulus) {
    Poly acc = mod(F, Poly::constant(1), modulus), base = mod(F, a, modulus);
    while (e) {
        if (e & 1) acc = mod(F, mul(F, acc, base), modulus);
        e >>= 1;
        if (e) base = mod(F, mul(F, base, base), modulus);
    }
    return acc;
}

bool divides(const FiniteField& F, const Poly& d, const Poly& a) {
    if (d.is_zero()) return a.is_zero();
    return mod(F, a, d).is_zero();
}

Poly index_to_poly(std::uint64_t index, std::uint64_t q) {
    std::vector<Element> c;
    while (index) {
        c.push_back(static_cast<Element>(index % q));
        index /= q;
    }
    return Poly(std::move(c));
}

std::uint64_t poly_to_index(const Poly& f, std::uint64_t q) {
    std::uint64_t out = 0;
    const auto c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (out > (std::numeric_limits<std::uint64_t>::max() - c[i]) / q)
            throw CapacityError("polynomial index overflows 64 bits");
        out = out * q + c[i];
    }
    return out;
}

bool is_irreducible(const FiniteField& F, const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const Poly g = monic(F, f);
    const Poly x = Poly::x();
    // gcd(x^(q^i) - x, g) = 1 for i <= deg/2 rules out factors of degree i.
    Poly h = mod(F, x, g);
    for (int i = 1; 2 * i <= g.degree(); ++i) {
        h = powmod(F, h, F.q(), g);
        if (!gcd(F, sub(F, h, x), g).is_one()) return false;
    }
    return true;
}

BigInt count_irreducibles(std::uint64_t q, int d) {
    if (d < 1) throw InputError("degree must be >= 1");
    if (q < 2) throw InputError("q must be >= 2");
    const BigInt qq(static_cast<unsigned long>(q));
    BigInt sum = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        const int mu = mobius(e);
        if (mu == 0) continue;
        const BigInt term = hdensity::pow(qq, static_cast<std::uint64_t>(d / e));
        if (mu > 0) sum += term;
        else sum -= term;
    }
    return sum / d;
}

std::vector<Poly> list_irreducibles(const FiniteField& F, int d, std::uint64_t budget) {
    if (d < 1) throw InputError("degree must be >= 1");
    const std::uint64_t q = F.q();
    std::uint64_t span = 1;
    for (int i = 0; i < d; ++i) {
        if (span > budget / q)
            throw CapacityError("listing irreducibles of degree " + std::to_string(d) +
                                " exceeds budget q^d <= " + std::to_string(budget));
        span *= q;
    }
    std::vector<Poly> out;
    for (std::uint64_t t = 0; t < span; ++t) {
        Poly f = index_to_poly(span + t, q);
        if (is_irreducible(F, f)) out.push_back(std::move(f));
    }
    return out;
}

namespace {

Poly pth_root_poly(const FiniteField& F, const Poly& f) {
    const std::uint32_t p = F.characteristic();
    std::vector<Element> out;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(F.pth_root(f.coeff(i)));
    return Poly(std::move(out));
}

void sff(const FiniteField& F, const Poly& f, std::uint64_t scale_by,
         std::vector<std::pair<Poly, std::uint64_t>>& out) {
    const Poly df = derivative(F, f);
    const std::uint64_t p = F.characteristic();
    if (df.is_zero()) {
        // f is a p-th power.
        if (!f.is_constant()) sff(F, pth_root_poly(F, f), scale_by * p, out);
        return;
    }
    Poly c = gcd(F, f, df);
    Poly w = divmod(F, f, c).first;
    std::uint64_t i = 1;
    while (!w.is_constant()) {
        const Poly y = gcd(F, w, c);
        const Poly fac = divmod(F, w, y).first;
        if (!fac.is_constant()) out.emplace_back(monic(F, fac), i * scale_by);
        w = y;
        c = divmod(F, c, y).first;
        ++i;
    }
    if (!c.is_constant()) sff(F, pth_root_poly(F, c), scale_by * p, out);
}

}  // namespace

std::vector<std::pair<Poly, std::uint64_t>> squarefree_decomposition(const FiniteField& F,
                                                                     const Poly& f) {
    if (f.is_zero()) throw DomainError("square-free decomposition of zero");
    std::vector<std::pair<Poly, std::uint64_t>> out;
    sff(F, monic(F, f), 1, out);
    return out;
}

bool is_r_power_free(const FiniteField& F, const Poly& g, int r) {
    if (r < 1) throw InputError("r must be >= 1");
    if (g.is_zero()) return false;
    if (g.is_constant()) return true;
    if (r == 1) return false;
    for (const auto& [fac, e] : squarefree_decomposition(F, g))
        if (e >= static_cast<std::uint64_t>(r)) return false;
    return true;
}

bool is_h_wise_r_prime(const FiniteField& F, std::span<const Poly> tuple, const Hypergraph& h,
                       int r) {
    if (static_cast<int>(tuple.size()) != h.m())
        throw InputError("tuple length " + std::to_string(tuple.size()) + " != m = " +
                         std::to_string(h.m()));
    for (VertexMask e : h.edges()) {
        Poly g;
        for (int v = 0; v < h.m(); ++v) {
            if (!(e >> v & 1)) continue;
            g = gcd(F, g, tuple[static_cast<std::size_t>(v)]);
            if (g.is_one()) break;
        }
        if (g.is_one()) continue;
        if (!is_r_power_free(F, g, r)) return false;
    }
    return true;
}

std::vector<Place> fqx_places(std::uint64_t q, int degree_cutoff) {
    if (degree_cutoff < 1) throw InputError("degree cutoff must be >= 1");
    make_field_spec(q);  // validates q
    std::vector<Place> out;
    const BigInt qq(static_cast<unsigned long>(q));
    for (int d = 1; d <= degree_cutoff; ++d) {
        const BigInt count = count_irreducibles(q, d);
        if (!count.fits_ulong_p())
            throw CapacityError("irreducible count overflows 64 bits at degree " + std::to_string(d));
        out.push_back(Place{RingKind::fqx, hdensity::pow(qq, static_cast<std::uint64_t>(d)),
                            count.get_ui(), DegreeClass{d}});
    }
    return out;
}

std::string to_string(const FiniteField& F, const Poly& f) {
    if (!F.is_prime_field()) {
        std::string out = "[";
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
            if (i) out += ',';
            out += std::to_string(f.coeff(i));
        }
        return out + "]";
    }
    if (f.is_zero()) return "0";
    std::string out;
    for (int d = f.degree(); d >= 0; --d) {
        const Element c = f.coeff(static_cast<std::size_t>(d));
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (d == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c);
        out += 'x';
        if (d > 1) out += '^' + std::to_string(d);
    }
    return out;
}

Poly parse_poly(const FiniteField& F, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    auto fail = [&](const std::string& why) -> Poly {
        throw InputError("bad polynomial '" + text + "': " + why);
    };
    auto to_u64 = [&](std::string_view t) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) fail("expected integer");
        return v;
    };
    auto check_coeff = [&](std::uint64_t c) {
        if (c >= F.q()) fail("coefficient " + std::to_string(c) + " >= q");
        return static_cast<Element>(c);
    };
    if (s.empty()) return fail("empty");
    if (s[0] == '#') {
        return index_to_poly(to_u64(std::string_view(s).substr(1)), F.q());
    }
    if (s[0] == '[') {
        if (s.back() != ']') return fail("unterminated vector");
        std::vector<Element> c;
        const std::string body = s.substr(1, s.size() - 2);
        std::size_t start = 0;
        while (start <= body.size() && !body.empty()) {
            const auto comma = body.find(',', start);
            const auto tok = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            c.push_back(check_coeff(to_u64(tok)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return Poly(std::move(c));
    }
    std::vector<Element> acc;
    std::size_t start = 0;
    while (start < s.size()) {
        auto plus = s.find('+', start);
        const std::string term = s.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        if (term.empty()) return fail("empty term");
        const auto xpos = term.find('x');
        std::uint64_t coeff = 1;
        std::size_t degree = 0;
        if (xpos == std::string::npos) {
            coeff = to_u64(term);
        } else {
            std::string cs = term.substr(0, xpos);
            if (!cs.empty() && cs.back() == '*') cs.pop_back();
            if (!cs.empty()) coeff = to_u64(cs);
            const std::string rest = term.substr(xpos + 1);
            if (rest.empty()) degree = 1;
            else if (rest[0] == '^') degree = to_u64(std::string_view(rest).substr(1));
            else return fail("unexpected '" + rest + "'");
        }
        if (degree > 1'000'000) return fail("degree too large");
        if (acc.size() <= degree) acc.resize(degree + 1, 0);
        acc[degree] = F.add(acc[degree], check_coeff(coeff));
        if (plus == std::string::npos) break;
        start = plus + 1;
        if (start == s.size()) return fail("trailing '+'");
    }
    return Poly(std::move(acc));
}

}  // namespace hdensity::fqx
