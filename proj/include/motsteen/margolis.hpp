#pragma once

// Margolis homology HM(M, Q_t) = ker Q_t / im Q_t of a finite bigraded free
// F_p[tau, rho]-module with a square-zero Q_t action.
//
// Entry (i, j) of the Q_t matrix is the coefficient of e_i in Q_t e_j, so a
// nonzero entry c forces |e_i| + |c| = |e_j| + |Q_t|.  Ranks are taken over
// the fraction field, so the complex splits only along cosets of the
// lattice spanned by the bidegrees of the coefficients that occur; each
// report entry is one such coset (a single bidegree when all entries are
// constants).

#include "motsteen/bmu.hpp"
#include "motsteen/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace motsteen {

struct ModuleBasisElement {
    std::string name;
    Bidegree bidegree;
    bool boundary = false;  // Q_t of this element lost terms to truncation
};

struct ModulePresentation {
    Ring ring;
    std::vector<ModuleBasisElement> basis;
    std::map<int, CoeffMatrix> actions;
};

// Parses and validates; throws ModuleError (schema, homogeneity, Q_t^2 != 0).
ModulePresentation load_module_text(std::string_view json_text);
ModulePresentation load_module_file(const std::string& path);
std::string module_to_json(const ModulePresentation& m);
void validate_module(const ModulePresentation& m);

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b);

struct HomologyEntry {
    Bidegree bidegree;               // smallest basis bidegree in the coset
    std::vector<Bidegree> bidegrees;  // all basis bidegrees in the coset
    std::size_t dimension = 0;        // basis elements in the coset
    std::size_t kernel = 0;
    std::size_t image = 0;            // rank of the incoming differential
    std::size_t homology = 0;
    bool boundary = false;            // excluded from vanishing claims
};

struct HomologyReport {
    int t = 0;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> specialization;  // (tau, rho) residues
    std::vector<HomologyEntry> entries;

    std::size_t total_homology(bool include_boundary = false) const;
};

// Without a specialization ranks are over F_p(tau, rho).
HomologyReport margolis_homology(const ModulePresentation& m, int t,
                                 std::optional<std::pair<std::uint32_t, std::uint32_t>> specialization = {});

// The truncated B mu_p module on 1, u, v, u v, ..., v^N, u v^N with its Q_t action.
ModulePresentation export_bmu(const BmuComodule& bmu, int t);

}  // namespace motsteen
