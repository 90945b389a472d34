#pragma once

// Invariant suites shared by `motsteen verify` and the acceptance binary.
// Each suite counts individual checks and keeps the first counterexample.

#include "motsteen/margolis.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace motsteen {

struct SuiteResult {
    explicit SuiteResult(std::string label = {}) : name(std::move(label)) {}

    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::string first_failure;
    std::vector<std::string> notes;
    double elapsed_ms = 0;

    bool passed() const { return failures == 0 && checks > 0; }
    // Records one check; `what` is only evaluated for the first failure.
    bool check(bool ok, const std::function<std::string()>& what);
    void merge(const SuiteResult& other);
};

struct SuiteOptions {
    bool stop_at_first_failure = false;
};

// tau_i^2 for i <= max_i against the relation of the ring's prime.
SuiteResult relation_suite(const DualSteenrod& dual, int max_i = 3);
// Associativity and graded commutativity on pairs and triples, coassociativity,
// counit, and multiplicativity of phi_* for all monomials of first degree <= max_d.
SuiteResult hopf_suite(const DualSteenrod& dual, int max_d, SuiteOptions options = {});
// Identity pairing matrices, unit and associativity of op_mul up to max_d.
SuiteResult duality_suite(const MilnorAlgebra& algebra, int max_d);
// psi^*(a) is balanced over tau (a' tau (x) a'' = a' (x) a'' tau) for every basis a, and
// psi^* is an algebra map on pairs of total first degree <= max_d.
SuiteResult psi_multiplicative_suite(const MilnorAlgebra& algebra, int max_d);
// Q_t^2 = 0 (t <= max_square), psi^*(Q_t) against its closed form and the
// commutator with Q_0 (t <= max_t).
SuiteResult q_suite(const MilnorAlgebra& algebra, int max_square = 4, int max_t = 3);
// cartan_closed_form against op_coproduct for beta and P^i (Sq^i at p = 2), i <= max_i.
SuiteResult cartan_suite(const MilnorAlgebra& algebra, std::uint32_t max_i = 8);
// The rottura identities for every basis operation with first degree <= max_d and
// p^n <= max_pn, plus act(Q_0, u) = v and M_k(v) = v^{p^k} for k <= 2.
SuiteResult bmu_suite(const BmuComodule& bmu, int max_d, std::uint32_t max_pn = 8);
// Free and trivial E(Q_t) modules, direct-sum additivity on `pairs` random pairs,
// and rejection of presentations with Q_t^2 != 0.
SuiteResult margolis_suite(Ring ring, int pairs = 50, std::uint64_t seed = 1);
// With the central crossing rule the Hopf suite must fail, with the right unit it must pass.
SuiteResult crossing_suite(int max_d);

// Module builders used by the Margolis suite and the tests.
struct ModuleShape {
    std::vector<Bidegree> free_generators;      // each gives g and Q_t g
    std::vector<Bidegree> trivial;              // Q_t acts by zero
    std::vector<std::pair<Bidegree, CoeffMonomial>> torsion;  // g with Q_t g = c y
};
// The module in the standard basis, then conjugated by a random homogeneous
// unitriangular change of basis when `rng` is given.
ModulePresentation build_module(Ring ring, int t, const ModuleShape& shape, std::mt19937_64* rng = nullptr);
ModuleShape random_shape(Ring ring, std::mt19937_64& rng, int max_pieces = 4);

enum class SuiteGroup { Dual, Op, Bmu, All };
std::optional<SuiteGroup> parse_suite_group(std::string_view text);
// The suites of a group for one ring; the Bmu group uses truncation `truncation`.
std::vector<SuiteResult> run_suite_group(SuiteGroup group, Ring ring, int max_d, std::uint32_t truncation);

}  // namespace motsteen
