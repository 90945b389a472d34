#include "motsteen/coeff.hpp"

#include <algorithm>
#include <limits>

namespace motsteen {

std::string_view to_string(BaseMode mode)
{
    switch (mode) {
    case BaseMode::Generic:
        return "generic";
    case BaseMode::RhoZero:
        return "rho0";
    case BaseMode::Char2TauZero:
        return "char2";
    }
    return "generic";
}

std::optional<BaseMode> parse_base_mode(std::string_view text)
{
    if (text == "generic")
        return BaseMode::Generic;
    if (text == "rho0" || text == "rho-zero")
        return BaseMode::RhoZero;
    if (text == "char2" || text == "char2-tau-zero")
        return BaseMode::Char2TauZero;
    return std::nullopt;
}

std::string to_string(Bidegree bd)
{
    return "(" + std::to_string(bd.d) + "," + std::to_string(bd.w) + ")";
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

Ring Ring::make(std::uint32_t p, BaseMode mode)
{
    if (!is_prime(p) || p >= (1u << 31))
        throw ContractError("prime must be a prime below 2^31, got " + std::to_string(p));
    return Ring{p, mode};
}

void require_same_ring(const Ring& a, const Ring& b, std::string_view what)
{
    if (a != b)
        throw ContractError(std::string(what) + ": operands over different rings (p=" + std::to_string(a.p) + "/" +
                            std::string(to_string(a.mode)) + " vs p=" + std::to_string(b.p) + "/" +
                            std::string(to_string(b.mode)) + ")");
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    if (a % p == 0)
        throw Error("inverse of zero residue");
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return std::uint32_t(result);
}

std::uint32_t reduce_mod(long long value, std::uint32_t p)
{
    long long r = value % static_cast<long long>(p);
    if (r < 0)
        r += p;
    return std::uint32_t(r);
}

std::string format_coeff_term(std::uint32_t c, CoeffMonomial m)
{
    std::string out;
    auto append = [&](const std::string& piece) {
        if (!out.empty())
            out += '*';
        out += piece;
    };
    if (c != 1 || m.is_one())
        append(std::to_string(c));
    if (m.tau == 1)
        append("tau");
    else if (m.tau > 1)
        append("tau^" + std::to_string(m.tau));
    if (m.rho == 1)
        append("rho");
    else if (m.rho > 1)
        append("rho^" + std::to_string(m.rho));
    return out;
}

Coeff Coeff::constant(Ring ring, long long value)
{
    Coeff out(ring);
    out.add_term({}, reduce_mod(value, ring.p));
    return out;
}

Coeff Coeff::monomial(Ring ring, std::uint32_t c, CoeffMonomial m)
{
    Coeff out(ring);
    out.add_term(m, c % ring.p);
    return out;
}

std::optional<Bidegree> Coeff::bidegree() const
{
    if (terms_.size() != 1)
        return std::nullopt;
    return terms_.front().mono.bidegree();
}

void Coeff::add_term(CoeffMonomial m, std::uint32_t c)
{
    c %= ring_.p;
    if (c == 0 || !admits(ring_, m))
        return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, CoeffMonomial key) { return t.mono < key; });
    if (it != terms_.end() && it->mono == m) {
        it->c = add_mod(it->c, c, ring_.p);
        if (it->c == 0)
            terms_.erase(it);
    }
    else {
        terms_.insert(it, Term{m, c});
    }
}

Coeff Coeff::operator-() const
{
    Coeff out = *this;
    for (auto& t : out.terms_)
        t.c = neg_mod(t.c, ring_.p);
    return out;
}

Coeff operator+(const Coeff& a, const Coeff& b)
{
    require_same_ring(a.ring_, b.ring_, "coeff_add");
    Coeff out = a;
    for (const auto& t : b.terms_)
        out.add_term(t.mono, t.c);
    return out;
}

Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }

Coeff operator*(const Coeff& a, const Coeff& b)
{
    require_same_ring(a.ring_, b.ring_, "coeff_mul");
    Coeff out(a.ring_);
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_)
            out.add_term(x.mono * y.mono, mul_mod(x.c, y.c, a.ring_.p));
    return out;
}

Coeff Coeff::scaled(std::uint32_t c) const
{
    Coeff out(ring_);
    for (const auto& t : terms_)
        out.add_term(t.mono, mul_mod(t.c, c % ring_.p, ring_.p));
    return out;
}

Coeff Coeff::times(CoeffMonomial m, std::uint32_t c) const
{
    Coeff out(ring_);
    for (const auto& t : terms_)
        out.add_term(t.mono * m, mul_mod(t.c, c % ring_.p, ring_.p));
    return out;
}

namespace {
std::uint32_t pow_mod(std::uint32_t base, std::uint32_t e, std::uint32_t p)
{
    std::uint64_t result = 1 % p, b = base % p;
    while (e) {
        if (e & 1)
            result = result * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return std::uint32_t(result);
}
}  // namespace

std::uint32_t Coeff::evaluate(std::uint32_t tau_value, std::uint32_t rho_value) const
{
    std::uint32_t p = ring_.p, acc = 0;
    for (const auto& t : terms_) {
        std::uint32_t v = mul_mod(t.c, pow_mod(tau_value, t.mono.tau, p), p);
        v = mul_mod(v, pow_mod(rho_value, t.mono.rho, p), p);
        acc = add_mod(acc, v, p);
    }
    return acc;
}

const Coeff::Term& Coeff::leading() const
{
    if (terms_.empty())
        throw Error("leading term of zero coefficient");
    return *std::max_element(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
        return a.mono.tau != b.mono.tau ? a.mono.tau < b.mono.tau : a.mono.rho < b.mono.rho;
    });
}

Coeff coeff_mul(const Coeff& a, const Coeff& b) { return a * b; }

std::optional<Bidegree> coeff_bidegree(const Coeff& a) { return a.bidegree(); }

Coeff divide_exact(const Coeff& num, const Coeff& den)
{
    require_same_ring(num.ring(), den.ring(), "divide_exact");
    if (den.is_zero())
        throw Error("division by zero coefficient");
    const std::uint32_t p = num.ring().p;
    const auto lead_den = den.leading();
    const std::uint32_t inv = inv_mod(lead_den.c, p);
    Coeff quotient(num.ring());
    Coeff rem = num;
    while (!rem.is_zero()) {
        const auto lt = rem.leading();
        if (lt.mono.tau < lead_den.mono.tau || lt.mono.rho < lead_den.mono.rho)
            throw Error("divide_exact: divisor does not divide dividend");
        CoeffMonomial shift{lt.mono.tau - lead_den.mono.tau, lt.mono.rho - lead_den.mono.rho};
        std::uint32_t c = mul_mod(lt.c, inv, p);
        quotient.add_term(shift, c);
        rem = rem - den.times(shift, c);
    }
    return quotient;
}

std::string to_string(const Coeff& c)
{
    if (c.is_zero())
        return "0";
    std::string out;
    for (const auto& t : c.terms()) {
        if (!out.empty())
            out += " + ";
        out += format_coeff_term(t.c, t.mono);
    }
    return out;
}

}  // namespace motsteen
