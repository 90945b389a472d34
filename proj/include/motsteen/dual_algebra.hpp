#pragma once

// The dual Steenrod algebra A_{*,*}: normal-form products (with the exotic
// relation for tau_i^2 at p = 2), the coproduct phi_*, counits, and the
// bigraded Milnor basis.
//
// Left coefficients act by the left unit.  In a tensor a (x) c*b the
// coefficient c crosses the tensor sign as a*eta_R(c) (x) b, where
// eta_R(tau) = tau + rho*tau_0 and eta_R(rho) = rho.  With
// CrossingRule::Central coefficients cross unchanged instead; that rule is
// kept only to show that it breaks the Hopf algebroid axioms.

#include "motsteen/linear.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace motsteen {

enum class CrossingRule : std::uint8_t { RightUnit, Central };

// One factor of a formal product: tau_index^exponent or xi_index^exponent.
struct RawFactor {
    bool is_tau = true;
    int index = 0;
    std::uint32_t exponent = 1;
};

struct ProductTerm {
    CoeffMonomial coeff;
    DualMonomial mono;
    std::uint32_t c;
};

class DualSteenrod {
public:
    explicit DualSteenrod(Ring ring, CrossingRule rule = CrossingRule::RightUnit);
    ~DualSteenrod();
    DualSteenrod(const DualSteenrod&) = delete;
    DualSteenrod& operator=(const DualSteenrod&) = delete;

    const Ring& ring() const { return ring_; }
    std::uint32_t prime() const { return ring_.p; }
    CrossingRule crossing() const { return rule_; }
    // True when eta_R differs from the left unit (p = 2, tau and rho both live).
    bool twisted() const;

    Bidegree degree(const DualMonomial& m) const { return m.bidegree(ring_.p); }
    DualElement element(const DualMonomial& m, const Coeff& c) const;
    DualElement element(const DualMonomial& m) const;

    // Normal form of a product of two monomials, cached.
    const std::vector<ProductTerm>& mul(const DualMonomial& a, const DualMonomial& b) const;
    DualElement mul(const DualElement& a, const DualElement& b) const;
    // c times the formal product, rewritten into normal form.
    DualElement normalize(std::span<const RawFactor> word, const Coeff& c) const;

    // eta_R(c) as an element of A_{*,*}.
    DualElement right_unit(const Coeff& c) const;

    const DualTensor& coproduct(const DualMonomial& m) const;
    DualTensor coproduct(const DualElement& x) const;
    // The terms c * (left (x) r) of phi_*(m), returned as sum c * r.  Only for
    // untwisted rings, where left factors never meet a relation, so partial
    // products whose left factor does not divide `left` can be dropped.
    DualElement coproduct_slice(const DualMonomial& m, const DualMonomial& left) const;
    DualTensor tensor_mul(const DualTensor& a, const DualTensor& b) const;
    DualTensor3 coproduct_left(const DualTensor& x) const;   // (phi (x) id)
    DualTensor3 coproduct_right(const DualTensor& x) const;  // (id (x) phi)
    DualElement counit_left(const DualTensor& x) const;      // (eps (x) id)
    DualElement counit_right(const DualTensor& x) const;     // (id (x) eps)

    // Normal-form monomials of exactly this bidegree, in lex order.
    const std::vector<DualMonomial>& basis(Bidegree bd) const;
    // F_p-dimension of the bidegree, counting c * omega with |omega| - |c| = bd.
    std::uint64_t fp_dimension(Bidegree bd) const;
    // All normal-form monomials with first degree <= max_d, by increasing degree.
    std::vector<DualMonomial> monomials_up_to(int max_d) const;

    // Appends m * eta_R(coeff) * (scale) to out, in normal form with left coefficients.
    void cross(std::vector<ProductTerm>& out, const DualMonomial& m, CoeffMonomial coeff, std::uint32_t scale) const;

private:
    std::vector<ProductTerm> compute_mul(const DualMonomial& a, const DualMonomial& b) const;
    // mul(a, b) without the cache when the tau factors are disjoint; the single
    // term is then written to `scratch`.
    std::span<const ProductTerm> product(const DualMonomial& a, const DualMonomial& b, ProductTerm& scratch) const;
    DualTensor compute_coproduct(const DualMonomial& m) const;
    DualTensor generator_coproduct(const DualMonomial& g) const;
    std::vector<DualMonomial> compute_basis(Bidegree bd) const;

    Ring ring_;
    CrossingRule rule_;

    struct PairHash {
        std::size_t operator()(const std::pair<DualMonomial, DualMonomial>& k) const noexcept
        {
            return DualMonomialHash{}(k.first) * 31 ^ DualMonomialHash{}(k.second);
        }
    };
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::pair<DualMonomial, DualMonomial>, std::vector<ProductTerm>, PairHash> mul_cache_;
    mutable std::unordered_map<DualMonomial, DualTensor, DualMonomialHash> coproduct_cache_;
    mutable std::map<Bidegree, std::vector<DualMonomial>> basis_cache_;
};

// Sign (+1 or p-1 as residue) from concatenating tau(a) tau(b) into ascending order.
std::uint32_t koszul_sign(std::uint32_t a_mask, std::uint32_t b_mask, std::uint32_t p);

}  // namespace motsteen
