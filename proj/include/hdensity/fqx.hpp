#pragma once

#include "hdensity/density.hpp"
#include "hdensity/hypergraph.hpp"
#include "hdensity/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Polynomial backend F_q[x].
namespace hdensity::fqx {

// Field elements are encoded as integers 0..q-1: the coefficient vector of
// the element over F_p (in the basis 1, y, y^2, ...) read as base-p digits.
// Code 0 is zero and code 1 is one; this is also the order a_0, a_1, ...
// used by the index enumeration.
using Element = std::uint32_t;

inline constexpr std::uint64_t kMaxExtensionOrder = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kDefaultIrreducibleBudget = 10'000'000;

struct FieldSpec {
    std::uint32_t p = 2;
    int k = 1;
    // Monic irreducible of degree k over F_p, low degree first, k+1 entries.
    // Empty when k == 1.
    std::vector<std::uint32_t> modulus;

    std::uint64_t q() const;
};

// Factors q = p^k. For k > 1 uses `modulus` if given (checked for
// irreducibility), else the lexicographically smallest monic irreducible of
// degree k, comparing coefficients from the constant term upward.
FieldSpec make_field_spec(std::uint64_t q,
                          std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

class FiniteField {
public:
    explicit FiniteField(FieldSpec spec);
    static FiniteField of_order(std::uint64_t q) { return FiniteField(make_field_spec(q)); }

    const FieldSpec& spec() const noexcept { return spec_; }
    std::uint64_t q() const noexcept { return q_; }
    std::uint32_t characteristic() const noexcept { return spec_.p; }
    bool is_prime_field() const noexcept { return spec_.k == 1; }

    Element add(Element a, Element b) const;
    Element sub(Element a, Element b) const;
    Element neg(Element a) const;
    Element mul(Element a, Element b) const;
    Element inv(Element a) const;  // DomainError on 0
    Element pow(Element a, std::uint64_t e) const;
    Element pth_root(Element a) const;
    // Image of the integer n under Z -> F_q.
    Element from_integer(std::uint64_t n) const { return static_cast<Element>(n % spec_.p); }

private:
    FieldSpec spec_;
    std::uint64_t q_;
    std::vector<std::uint32_t> exp_;  // extension fields only
    std::vector<std::uint32_t> log_;
};

// Coefficients lowest degree first; never has a trailing zero. The zero
// polynomial has no coefficients and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Element> coeffs);
    static Poly constant(Element c) { return Poly(std::vector<Element>{c}); }
    static Poly monomial(Element c, std::size_t degree);
    static Poly x() { return Poly(std::vector<Element>{0, 1}); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    Element coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Element lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    std::span<const Element> coeffs() const noexcept { return c_; }

    friend bool operator==(const Poly&, const Poly&) = default;
    friend auto operator<=>(const Poly&, const Poly&) = default;

private:
    std::vector<Element> c_;
};

Poly add(const FiniteField& F, const Poly& a, const Poly& b);
Poly sub(const FiniteField& F, const Poly& a, const Poly& b);
Poly mul(const FiniteField& F, const Poly& a, const Poly& b);
Poly scale(const FiniteField& F, const Poly& a, Element c);
// DomainError on zero divisor.
std::pair<Poly, Poly> divmod(const FiniteField& F, const Poly& a, const Poly& b);
Poly mod(const FiniteField& F, const Poly& a, const Poly& b);
Poly monic(const FiniteField& F, const Poly& a);
Poly gcd(const FiniteField& F, const Poly& a, const Poly& b);  // monic, or 0
Poly derivative(const FiniteField& F, const Poly& a);
Poly pow(const FiniteField& F, const Poly& a, std::uint64_t e);
Poly powmod(const FiniteField& F, const Poly& a, std::uint64_t e, const Poly& modulus);
bool divides(const FiniteField& F, const Poly& d, const Poly& a);

// Index enumeration: the base-q digits of j are the coefficient codes.
Poly index_to_poly(std::uint64_t index, std::uint64_t q);
std::uint64_t poly_to_index(const Poly& f, std::uint64_t q);

bool is_irreducible(const FiniteField& F, const Poly& f);

// Number of monic irreducibles of degree d, (1/d) sum_{e|d} mu(e) q^(d/e).
BigInt count_irreducibles(std::uint64_t q, int d);

// Monic irreducibles of degree d in ascending index order. Throws
// CapacityError when q^d exceeds `budget`.
std::vector<Poly> list_irreducibles(const FiniteField& F, int d,
                                    std::uint64_t budget = kDefaultIrreducibleBudget);

// Square-free decomposition: pairwise coprime square-free monic factors with
// multiplicities, f = lead * prod a_i^{e_i}. Nonzero f only.
std::vector<std::pair<Poly, std::uint64_t>> squarefree_decomposition(const FiniteField& F,
                                                                     const Poly& f);

// False for 0, true for nonzero constants, else true iff no irreducible f
// has f^r | g.
bool is_r_power_free(const FiniteField& F, const Poly& g, int r);

bool is_h_wise_r_prime(const FiniteField& F, std::span<const Poly> tuple, const Hypergraph& h,
                       int r);

// One grouped place per degree d <= degree_cutoff: norm q^d, multiplicity
// count_irreducibles(q, d).
std::vector<Place> fqx_places(std::uint64_t q, int degree_cutoff);

// f_0, ..., f_N in index order (N + 1 elements).
struct PolyBox {
    std::uint64_t N = 0;
    std::uint64_t q = 2;
    std::uint64_t size() const { return N + 1; }
    Poly at(std::uint64_t index) const { return index_to_poly(index, q); }
};

// Prime fields render as "x^3+2x+1"; extension fields as "[c0,c1,...]".
std::string to_string(const FiniteField& F, const Poly& f);
// Accepts "x^2+x+1", "[1,1,1]" and "#7"; coefficients are element codes.
Poly parse_poly(const FiniteField& F, const std::string& text);

}  // namespace hdensity::fqx
