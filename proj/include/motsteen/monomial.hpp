#pragma once

// Milnor monomials tau(E) xi(R) in the dual Steenrod algebra.  The same
// type labels the dual Milnor basis rho(E, R) on the operation side.

#include "motsteen/coeff.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace motsteen {

struct DualMonomial {
    static constexpr int kMaxXi = 12;   // xi_1 .. xi_12
    static constexpr int kMaxTau = 32;  // tau_0 .. tau_31

    std::uint32_t tau_mask = 0;           // bit i set <=> tau_i present
    std::array<std::uint16_t, kMaxXi> xi{};  // xi[j-1] = exponent of xi_j

    static DualMonomial one() { return {}; }
    static DualMonomial tau(int i);
    static DualMonomial xi_power(int j, std::uint32_t r);
    // rho(E, R) labels: E as index set, R as (r_1, r_2, ...).
    static DualMonomial from(const std::vector<int>& taus, const std::vector<std::uint32_t>& rs);

    bool is_one() const;
    bool has_tau(int i) const { return (tau_mask >> i) & 1u; }
    int tau_count() const { return std::popcount(tau_mask); }
    std::uint32_t r(int j) const { return j >= 1 && j <= kMaxXi ? xi[j - 1] : 0; }
    // Highest j with r_j > 0, or 0.
    int xi_length() const;
    int tau_top() const { return tau_mask ? 31 - std::countl_zero(tau_mask) : -1; }

    Bidegree bidegree(std::uint32_t p) const;
    // Sum of the tau-parts' first degrees mod 2; xi's are even.
    bool odd(std::uint32_t /*p*/) const { return tau_count() & 1; }

    friend bool operator==(const DualMonomial&, const DualMonomial&) = default;
};

// Degrees of the generators; WindowError when the index is out of range.
Bidegree tau_degree(std::uint32_t p, int i);
Bidegree xi_degree(std::uint32_t p, int j);
std::uint64_t ipow(std::uint64_t base, unsigned e);

// Lexicographic order on (eps_0, eps_1, r_1, eps_2, r_2, ...).
bool lex_less(const DualMonomial& a, const DualMonomial& b);
// Printing order: higher first degree first, then higher weight, then lex.
bool print_less(const DualMonomial& a, const DualMonomial& b, std::uint32_t p);

// "t0 t1 x1^3"; "1" for the unit.
std::string format_dual_monomial(const DualMonomial& m);
// "Q0", "QE{0,2}", "P3", "P(0,1)", "Q1P2"; "1" for the unit.
std::string format_op_basis(const DualMonomial& m);

struct DualMonomialHash {
    std::size_t operator()(const DualMonomial& m) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ m.tau_mask;
        for (auto r : m.xi)
            h = (h ^ r) * 0x100000001b3ull;
        return std::size_t(h ^ (h >> 29));
    }
};

}  // namespace motsteen

template <>
struct std::hash<motsteen::DualMonomial> : motsteen::DualMonomialHash {};
