#pragma once

// The motivic cohomology of B mu_p truncated at v^N: basis u^e v^n with
// e in {0, 1}, n <= N, and u^2 = tau v + rho u (p = 2) or u^2 = 0 (p odd).
// Operations act through the coaction
//   lambda(u) = u (x) 1 + sum_{i>=0} v^{p^i} (x) tau_i,
//   lambda(v) = v (x) 1 + sum_{i>=1} v^{p^i} (x) xi_i,
//   lambda(c) = 1 (x) eta_R(c)  for coefficients c,
// extended multiplicatively.

#include "motsteen/op_algebra.hpp"

#include <map>
#include <string>
#include <tuple>

namespace motsteen {

struct BmuMonomial {
    std::uint8_t u = 0;
    std::uint32_t v = 0;

    Bidegree bidegree() const { return {int(u) + 2 * int(v), int(u) + int(v)}; }
    bool odd() const { return u & 1; }
    friend bool operator==(BmuMonomial, BmuMonomial) = default;
    friend auto operator<=>(BmuMonomial a, BmuMonomial b) { return std::tie(a.v, a.u) <=> std::tie(b.v, b.u); }
};

std::string format_bmu_monomial(BmuMonomial m);

class BmuElement {
public:
    using Key = std::pair<CoeffMonomial, BmuMonomial>;

    explicit BmuElement(Ring ring) : ring_(ring) {}
    static BmuElement monomial(Ring ring, BmuMonomial m, const Coeff& c);

    const Ring& ring() const { return ring_; }
    const std::map<Key, std::uint32_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint32_t max_v() const;

    void add(CoeffMonomial coeff, BmuMonomial m, std::uint32_t c);
    void add_scaled(const BmuElement& x, CoeffMonomial coeff, std::uint32_t c);
    Coeff coefficient(BmuMonomial m) const;

    friend BmuElement operator+(const BmuElement& a, const BmuElement& b);
    friend BmuElement operator-(const BmuElement& a, const BmuElement& b);
    friend bool operator==(const BmuElement&, const BmuElement&) = default;

private:
    Ring ring_;
    std::map<Key, std::uint32_t> terms_;
};

std::string to_string(const BmuElement& x);

// Terms c * m (x) omega of lambda(x).
struct LambdaTerm {
    CoeffMonomial coeff;
    BmuMonomial m;
    DualMonomial omega;
    std::uint32_t c;
};

struct RotturaReport {
    BmuElement lhs_u, rhs_u;  // theta(u^{p^n}) and its closed form
    BmuElement lhs_v, rhs_v;  // theta(v^{p^n}) and its closed form
    bool holds() const { return lhs_u == rhs_u && lhs_v == rhs_v; }
};

class BmuComodule {
public:
    BmuComodule(const MilnorAlgebra& algebra, std::uint32_t truncation);

    const MilnorAlgebra& algebra() const { return algebra_; }
    const Ring& ring() const { return algebra_.ring(); }
    std::uint32_t truncation() const { return truncation_; }

    BmuElement element(BmuMonomial m) const;
    BmuElement element(BmuMonomial m, const Coeff& c) const;
    BmuElement u() const { return element({1, 0}); }
    BmuElement v() const { return element({0, 1}); }
    BmuElement power(const BmuElement& x, std::uint32_t e) const;

    // Product with u^2 reduced; TruncationError if a nonzero term exceeds v^N.
    BmuElement mul(const BmuElement& a, const BmuElement& b) const;

    // lambda(x) keeping only v-exponents <= limit and omega of first degree <= max_omega_d.
    std::vector<LambdaTerm> lambda(const BmuElement& x, std::uint32_t limit, int max_omega_d) const;
    std::vector<LambdaTerm> lambda(const BmuElement& x) const;

    // theta(x) by contracting lambda(x) against theta.
    BmuElement act(const OpElement& th, const BmuElement& x) const;

    RotturaReport verify_rottura(const OpElement& th, unsigned n) const;

private:
    BmuElement mul_unbounded(const BmuElement& a, const BmuElement& b, std::uint32_t limit, bool strict) const;

    const MilnorAlgebra& algebra_;
    std::uint32_t truncation_;
};

}  // namespace motsteen
