#pragma once

// The Steenrod algebra A^{*,*} in the Milnor basis rho(E, R), the basis dual
// to the monomials tau(E) xi(R).  Products and the Cartan coproduct psi^*
// are obtained by dualizing the coproduct and the product of A_{*,*}; no
// Adem relations are used.
//
// Coefficients act on operations with the addition convention: c * rho_I
// has bidegree |c| + |I|.  A coefficient to the right of an operation is
// moved left with commute(); at p = 2 with tau and rho both live this
// produces the correction rho_I * tau = tau rho_I + rho (rho_I cap tau_0).

#include "motsteen/dual_algebra.hpp"

#include <map>
#include <unordered_map>
#include <vector>

namespace motsteen {

enum class CartanKind : std::uint8_t { P, SqEven, SqOdd, Beta };

class MilnorAlgebra {
public:
    // Products and coproducts are available up to first degree max_d.
    MilnorAlgebra(const DualSteenrod& dual, int max_d);
    ~MilnorAlgebra();
    MilnorAlgebra(const MilnorAlgebra&) = delete;
    MilnorAlgebra& operator=(const MilnorAlgebra&) = delete;

    const DualSteenrod& dual() const { return dual_; }
    const Ring& ring() const { return dual_.ring(); }
    std::uint32_t prime() const { return dual_.prime(); }
    int max_d() const { return max_d_; }

    OpElement element(const DualMonomial& label) const;
    OpElement element(const DualMonomial& label, const Coeff& c) const;

    Coeff pair(const DualElement& x, const OpElement& th) const;

    const OpElement& mul_basis(const DualMonomial& a, const DualMonomial& b) const;
    OpElement mul(const OpElement& a, const OpElement& b) const;
    // rho_A * c rewritten with coefficients on the left.
    OpElement commute(const DualMonomial& a, CoeffMonomial c) const;
    // <x, th cap y> = <y x, th>.
    OpElement cap(const OpElement& th, const DualMonomial& y) const;

    const OpTensor& coproduct_basis(const DualMonomial& k) const;
    OpTensor coproduct(const OpElement& th) const;
    // a (x) b.  Coefficients of a tensor are central: (a (x) c b)(x, y) = c a(x) b(y).
    OpTensor outer(const OpElement& a, const OpElement& b) const;
    // Composite of Cartan expansions: a coefficient of b moves through the
    // left factor of a, (a' (x) a'')(c b' (x) b'') = (a' c b') (x) (a'' b'').
    OpTensor tensor_mul(const OpTensor& a, const OpTensor& b) const;
    // <x y, psi> for basis monomials, with the Koszul sign of the pairing.
    Coeff pair_tensor(const DualMonomial& x, const DualMonomial& y, const OpTensor& psi) const;

    // Named classes.
    OpElement one() const;
    OpElement q_class(const std::vector<int>& e) const;         // Q_E
    OpElement milnor_primitive(int t) const;                    // Q_t
    OpElement xi_dual(const std::vector<std::uint32_t>& r) const;  // (r_1, r_2, ...)
    OpElement reduced_power(std::uint32_t i) const;             // P^i
    OpElement bockstein() const;                                // beta = Q_0
    OpElement q_op(int t) const;                                // (0, ..., 0, 1), 1 in slot t
    OpElement sq(std::uint32_t i) const;                        // p = 2 only
    // P^{p^{k-1}} ... P^p P^1 as a product (k = 0 gives 1).
    OpElement m_class(int k) const;

    // Closed-form Cartan coproducts, built from products in this algebra.
    // P: P^i at odd p.  SqEven / SqOdd: Sq^{2i} / Sq^{2i+1} at p = 2.  Beta: beta.
    OpTensor cartan_closed_form(std::uint32_t i, CartanKind kind) const;
    // psi^*(Q_t): primitive at odd p, with the rho^h corrections at p = 2.
    OpTensor primitive_coproduct_closed_form(int t) const;

    // Bidegree of a homogeneous element (nullopt when zero or inhomogeneous).
    std::optional<Bidegree> bidegree(const OpElement& th) const;
    void check_window(int d, const char* what) const;

private:
    struct IndexEntry {
        DualMonomial i;
        std::uint32_t c;
    };
    struct PairHash {
        std::size_t operator()(const std::pair<DualMonomial, DualMonomial>& k) const noexcept
        {
            return DualMonomialHash{}(k.first) * 131 ^ DualMonomialHash{}(k.second);
        }
    };
    using PairIndex = std::unordered_map<std::pair<DualMonomial, DualMonomial>, std::vector<IndexEntry>, PairHash>;
    struct CommuteHash {
        std::size_t operator()(const std::pair<DualMonomial, CoeffMonomial>& k) const noexcept
        {
            return DualMonomialHash{}(k.first) * 131 ^ std::hash<CoeffMonomial>{}(k.second);
        }
    };

    OpElement compute_mul_basis(const DualMonomial& a, const DualMonomial& b) const;
    // For every omega_I of bidegree bd: (left, right) -> the I whose phi_* contains left (x) right.
    const PairIndex& coproduct_index(Bidegree bd) const;
    OpElement compute_commute(const DualMonomial& a, CoeffMonomial c) const;
    OpTensor compute_coproduct(const DualMonomial& k) const;
    // Admissible coefficient monomials c with |c| <= bd componentwise, |c| = (b, a+b).
    std::vector<CoeffMonomial> coefficient_shifts(Bidegree bd) const;

    const DualSteenrod& dual_;
    int max_d_;

    mutable std::mutex mutex_;
    mutable std::map<Bidegree, PairIndex> index_cache_;
    mutable std::unordered_map<std::pair<DualMonomial, CoeffMonomial>, OpElement, CommuteHash> commute_cache_;
    mutable std::unordered_map<std::pair<DualMonomial, DualMonomial>, OpElement, PairHash> mul_cache_;
    mutable std::unordered_map<DualMonomial, OpTensor, DualMonomialHash> coproduct_cache_;
};

}  // namespace motsteen
