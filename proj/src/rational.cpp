#include "hdensity/rational.hpp"

#include "hdensity/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace hdensity {

namespace {

BigInt product_range(std::span<const BigInt> f) {
    if (f.empty()) return 1;
    if (f.size() == 1) return f[0];
    if (f.size() == 2) return f[0] * f[1];
    const auto mid = f.size() / 2;
    return product_range(f.first(mid)) * product_range(f.subspan(mid));
}

BigInt pow10(long e) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return out;
}

// floor(log10(|v|)) for v != 0.
long decimal_exponent(const Rational& v) {
    BigInt num = abs(v.get_num());
    const BigInt& den = v.get_den();
    const double bits = static_cast<double>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                        static_cast<double>(mpz_sizeinbase(den.get_mpz_t(), 2));
    long e = static_cast<long>(std::floor(bits * 0.30102999566398120)) - 1;
    // Adjust the estimate until 10^e <= |v| < 10^(e+1).
    auto ge_pow = [&](long k) {
        if (k >= 0) return num >= den * pow10(k);
        return num * pow10(-k) >= den;
    };
    while (!ge_pow(e)) --e;
    while (ge_pow(e + 1)) ++e;
    return e;
}

}  // namespace

BigInt product(std::span<const BigInt> factors) { return product_range(factors); }

BigInt pow(const BigInt& base, std::uint64_t exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational pow(const Rational& base, std::uint64_t exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    return out;
}

Rational make_rational(BigInt num, BigInt den, unsigned long prime) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return Rational(0);
    if (prime >= 2) {
        BigInt p(prime);
        while (den % p == 0 && num % p == 0) {
            // Strip a block of common p factors at once.
            BigInt tmp;
            const auto vn = mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
            BigInt tmp2;
            const auto vd = mpz_remove(tmp2.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
            const auto common = std::min(vn, vd);
            const BigInt block = pow(p, common);
            mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), block.get_mpz_t());
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), block.get_mpz_t());
        }
        Rational out;
        out.get_num() = std::move(num);
        out.get_den() = std::move(den);
        return out;
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

std::string to_decimal(const Rational& value, int digits) {
    if (digits < 1) digits = 1;
    if (value == 0) return "0";
    const bool negative = value < 0;
    const Rational mag = abs(value);
    long e = decimal_exponent(mag);
    // scaled = round(mag * 10^(digits-1-e))
    auto scaled_at = [&](long exp10) {
        const long shift = digits - 1 - exp10;
        BigInt num = mag.get_num();
        BigInt den = mag.get_den();
        if (shift >= 0) num *= pow10(shift);
        else den *= pow10(-shift);
        BigInt q = (2 * num + den) / (2 * den);
        return q;
    };
    BigInt scaled = scaled_at(e);
    if (scaled >= pow10(digits)) {
        ++e;
        scaled = scaled_at(e);
    }
    std::string ds = scaled.get_str(10);
    // Trim trailing zeros of the mantissa.
    while (ds.size() > 1 && ds.back() == '0') ds.pop_back();
    std::string out = negative ? "-" : "";
    if (e >= -5 && e < digits) {
        if (e < 0) {
            out += "0.";
            out.append(static_cast<std::size_t>(-e - 1), '0');
            out += ds;
        } else {
            const auto int_len = static_cast<std::size_t>(e + 1);
            if (ds.size() <= int_len) {
                out += ds;
                out.append(int_len - ds.size(), '0');
            } else {
                out += ds.substr(0, int_len);
                out += '.';
                out += ds.substr(int_len);
            }
        }
    } else {
        out += ds.substr(0, 1);
        if (ds.size() > 1) {
            out += '.';
            out += ds.substr(1);
        }
        out += 'e';
        out += (e < 0 ? '-' : '+');
        const std::string es = std::to_string(std::labs(e));
        if (es.size() < 2) out += '0';
        out += es;
    }
    return out;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            Rational out(BigInt(text.substr(0, slash), 10), BigInt(text.substr(slash + 1), 10));
            if (out.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
            out.canonicalize();
            return out;
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(BigInt(text, 10));
        std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
        if (whole.empty()) whole = "0";
        for (char c : frac)
            if (c < '0' || c > '9') throw InputError("bad decimal literal '" + text + "'");
        Rational out(BigInt(whole + frac, 10), pow10(static_cast<long>(frac.size())));
        out.canonicalize();
        return neg ? Rational(-out) : out;
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal '" + text + "'");
    }
}

Rational from_double(double value) {
    if (!std::isfinite(value)) throw InputError("non-finite double");
    Rational out(value);
    return out;
}

}  // namespace hdensity
