#pragma once

// Slow independent reference computations used to check the engine.

#include "motsteen/linalg.hpp"
#include "motsteen/monomial.hpp"

#include <map>
#include <random>
#include <vector>

namespace oracle {

using motsteen::Bidegree;
using motsteen::Coeff;
using motsteen::DualMonomial;
using motsteen::Ring;

struct TermLess {
    bool operator()(const std::pair<DualMonomial, motsteen::CoeffMonomial>& a,
                    const std::pair<DualMonomial, motsteen::CoeffMonomial>& b) const
    {
        if (a.first != b.first)
            return motsteen::lex_less(a.first, b.first);
        return a.second < b.second;
    }
};

// Normal form: (monomial, coefficient monomial) -> nonzero residue.
using NormalForm = std::map<std::pair<DualMonomial, motsteen::CoeffMonomial>, std::uint32_t, TermLess>;

struct Factor {
    bool is_tau;
    int index;  // tau_index or xi_index (index >= 1)
};

// Normal form of a product of generators by blind rewriting.  At p = 2 the
// factors commute and a randomly chosen tau_i^2 is replaced by
// tau xi_{i+1} + rho tau_{i+1} + rho tau_0 xi_{i+1} until none is left; at odd
// p the word is bubble-sorted with a sign per swap of two tau's.
NormalForm normalize(const Ring& ring, const std::vector<Factor>& word, std::mt19937_64& rng);

// Every monomial tau(E) xi(R) with first degree <= max_d, by plain recursion.
std::vector<DualMonomial> all_monomials(std::uint32_t p, int max_d);

// Number of pairs (c, omega) with c an admissible coefficient monomial and
// |omega| - |c| = bd.
std::uint64_t fp_dimension(const Ring& ring, Bidegree bd);

// Rank over F_p by textbook Gaussian elimination.
std::size_t dense_rank(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

// Rank over F_p(tau, rho): the largest k with a nonzero k x k minor,
// determinants by cofactor expansion.  Only for small matrices.
std::size_t minor_rank(const motsteen::CoeffMatrix& m);
Coeff determinant(const motsteen::CoeffMatrix& m);

}  // namespace oracle
