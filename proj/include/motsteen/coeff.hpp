#pragma once

// Exact arithmetic in the bigraded coefficient ring F_p[tau, rho].
//
// |tau| = (0,1) and |rho| = (1,1), so the monomial tau^a rho^b sits in
// bidegree (b, a+b).  Every bigraded piece is one-dimensional, hence a
// homogeneous coefficient is always a single monomial times a residue.

#include "motsteen/errors.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace motsteen {

enum class BaseMode : std::uint8_t {
    Generic,       // tau and rho both free
    RhoZero,       // rho = 0 (base field contains sqrt(-1))
    Char2TauZero,  // tau = 0 (characteristic 2)
};

std::string_view to_string(BaseMode mode);
// Accepts "generic", "rho0", "rho-zero", "char2", "char2-tau-zero".
std::optional<BaseMode> parse_base_mode(std::string_view text);

struct Bidegree {
    int d = 0;  // first (cohomological) degree
    int w = 0;  // weight

    friend constexpr Bidegree operator+(Bidegree a, Bidegree b) { return {a.d + b.d, a.w + b.w}; }
    friend constexpr Bidegree operator-(Bidegree a, Bidegree b) { return {a.d - b.d, a.w - b.w}; }
    friend constexpr Bidegree operator*(int k, Bidegree a) { return {k * a.d, k * a.w}; }
    friend constexpr bool operator==(Bidegree, Bidegree) = default;
    friend constexpr auto operator<=>(Bidegree, Bidegree) = default;
};

std::string to_string(Bidegree bd);

struct Ring {
    std::uint32_t p = 2;
    BaseMode mode = BaseMode::Generic;

    // Validates that p is a prime below 2^31.
    static Ring make(std::uint32_t p, BaseMode mode = BaseMode::Generic);

    bool keeps_tau() const { return mode != BaseMode::Char2TauZero; }
    bool keeps_rho() const { return mode != BaseMode::RhoZero; }

    friend bool operator==(const Ring&, const Ring&) = default;
};

// Throws ContractError when the two rings differ.
void require_same_ring(const Ring& a, const Ring& b, std::string_view what);

bool is_prime(std::uint64_t n);

// Residue arithmetic on canonical representatives 0..p-1.
inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    std::uint64_t s = std::uint64_t(a) + b;
    return std::uint32_t(s >= p ? s - p : s);
}
inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    return a >= b ? a - b : std::uint32_t(std::uint64_t(a) + p - b);
}
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    return std::uint32_t(std::uint64_t(a) * b % p);
}
inline std::uint32_t neg_mod(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
std::uint32_t reduce_mod(long long value, std::uint32_t p);

// tau^tau * rho^rho.  Ordered by (rho, tau), which is also the printing order.
struct CoeffMonomial {
    std::uint32_t tau = 0;
    std::uint32_t rho = 0;

    Bidegree bidegree() const { return {int(rho), int(tau + rho)}; }
    bool is_one() const { return tau == 0 && rho == 0; }

    friend CoeffMonomial operator*(CoeffMonomial a, CoeffMonomial b) { return {a.tau + b.tau, a.rho + b.rho}; }
    friend bool operator==(CoeffMonomial, CoeffMonomial) = default;
    friend std::strong_ordering operator<=>(CoeffMonomial a, CoeffMonomial b)
    {
        if (auto c = a.rho <=> b.rho; c != 0)
            return c;
        return a.tau <=> b.tau;
    }
};

inline bool admits(const Ring& ring, CoeffMonomial m)
{
    return (ring.keeps_tau() || m.tau == 0) && (ring.keeps_rho() || m.rho == 0);
}

// "3*tau^2*rho": residue first (omitted when 1 and the monomial is not 1), then tau, then rho.
std::string format_coeff_term(std::uint32_t c, CoeffMonomial m);

class Coeff {
public:
    struct Term {
        CoeffMonomial mono;
        std::uint32_t c = 0;
        friend bool operator==(const Term&, const Term&) = default;
    };

    explicit Coeff(Ring ring) : ring_(ring) {}

    static Coeff zero(Ring ring) { return Coeff(ring); }
    static Coeff one(Ring ring) { return constant(ring, 1); }
    static Coeff constant(Ring ring, long long value);
    static Coeff monomial(Ring ring, std::uint32_t c, CoeffMonomial m);
    static Coeff tau(Ring ring) { return monomial(ring, 1, {1, 0}); }
    static Coeff rho(Ring ring) { return monomial(ring, 1, {0, 1}); }

    const Ring& ring() const { return ring_; }
    std::span<const Term> terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].c == 1; }
    // Single term (possibly with residue != 1).
    bool is_monomial() const { return terms_.size() == 1; }

    // nullopt when zero or inhomogeneous.
    std::optional<Bidegree> bidegree() const;
    bool is_homogeneous() const { return bidegree().has_value(); }

    // Adds c * m, dropping the term if the base mode kills m.
    void add_term(CoeffMonomial m, std::uint32_t c);

    Coeff operator-() const;
    friend Coeff operator+(const Coeff& a, const Coeff& b);
    friend Coeff operator-(const Coeff& a, const Coeff& b);
    friend Coeff operator*(const Coeff& a, const Coeff& b);
    Coeff scaled(std::uint32_t c) const;
    Coeff times(CoeffMonomial m, std::uint32_t c = 1) const;

    // Substitute residues for tau and rho.
    std::uint32_t evaluate(std::uint32_t tau_value, std::uint32_t rho_value) const;

    // Leading term in the lex order tau > rho (used by exact division).
    const Term& leading() const;

    friend bool operator==(const Coeff& a, const Coeff& b) = default;

private:
    Ring ring_;
    std::vector<Term> terms_;  // sorted by mono, residues nonzero
};

Coeff coeff_mul(const Coeff& a, const Coeff& b);
std::optional<Bidegree> coeff_bidegree(const Coeff& a);

// Exact quotient num / den in F_p[tau, rho].  Throws Error if den does not divide num.
Coeff divide_exact(const Coeff& num, const Coeff& den);

std::string to_string(const Coeff& c);

}  // namespace motsteen

template <>
struct std::hash<motsteen::CoeffMonomial> {
    std::size_t operator()(motsteen::CoeffMonomial m) const noexcept
    {
        return std::hash<std::uint64_t>{}((std::uint64_t(m.tau) << 32) | m.rho);
    }
};
