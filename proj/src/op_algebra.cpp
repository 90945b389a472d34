#include "motsteen/op_algebra.hpp"

namespace motsteen {

MilnorAlgebra::MilnorAlgebra(const DualSteenrod& dual, int max_d) : dual_(dual), max_d_(max_d)
{
    if (max_d < 0)
        throw ContractError("max_d must be non-negative");
}

MilnorAlgebra::~MilnorAlgebra() = default;

void MilnorAlgebra::check_window(int d, const char* what) const
{
    if (d > max_d_)
        throw WindowError(std::string(what) + " needs first degree " + std::to_string(d) +
                          ", beyond the window max_d=" + std::to_string(max_d_));
}

OpElement MilnorAlgebra::element(const DualMonomial& label) const { return element(label, Coeff::one(ring())); }

OpElement MilnorAlgebra::element(const DualMonomial& label, const Coeff& c) const
{
    return OpElement::monomial(ring(), {label}, c);
}

std::vector<CoeffMonomial> MilnorAlgebra::coefficient_shifts(Bidegree bd) const
{
    std::vector<CoeffMonomial> out;
    // Without the exotic relation no coefficients are ever produced.
    if (prime() != 2)
        return {CoeffMonomial{}};
    for (int b = 0; b <= bd.d; ++b)
        for (int a = 0; a + b <= bd.w; ++a) {
            CoeffMonomial c{std::uint32_t(a), std::uint32_t(b)};
            if (admits(ring(), c))
                out.push_back(c);
        }
    return out;
}

Coeff MilnorAlgebra::pair(const DualElement& x, const OpElement& th) const
{
    require_same_ring(x.ring(), ring(), "pair");
    require_same_ring(th.ring(), ring(), "pair");
    std::unordered_map<DualMonomial, std::vector<std::pair<CoeffMonomial, std::uint32_t>>, DualMonomialHash> by_label;
    for (const auto& [k, c] : th.terms())
        by_label[k.monos[0]].emplace_back(k.coeff, c);
    Coeff out(ring());
    const std::uint32_t p = ring().p;
    for (const auto& [k, c] : x.terms()) {
        auto it = by_label.find(k.monos[0]);
        if (it == by_label.end())
            continue;
        for (const auto& [coeff, c2] : it->second)
            out.add_term(k.coeff * coeff, mul_mod(c, c2, p));
    }
    return out;
}

const OpElement& MilnorAlgebra::mul_basis(const DualMonomial& a, const DualMonomial& b) const
{
    auto key = std::make_pair(a, b);
    {
        std::lock_guard lock(mutex_);
        if (auto it = mul_cache_.find(key); it != mul_cache_.end())
            return it->second;
    }
    auto value = compute_mul_basis(a, b);
    std::lock_guard lock(mutex_);
    return mul_cache_.try_emplace(key, std::move(value)).first->second;
}

OpElement MilnorAlgebra::compute_mul_basis(const DualMonomial& a, const DualMonomial& b) const
{
    const std::uint32_t p = prime();
    const Bidegree total = a.bidegree(p) + b.bidegree(p);
    check_window(total.d, "operation product");
    OpElement out(ring());
    // <omega_I, rho_A rho_B> is the coefficient of c (omega_A (x) omega_B) in phi_*(omega_I),
    // where |I| = |A| + |B| - |c|, times the Koszul sign of the tensor pairing.
    const std::uint32_t sign = (p != 2 && a.odd(p) && b.odd(p)) ? p - 1 : 1;
    if (!dual_.twisted()) {
        for (CoeffMonomial c : coefficient_shifts(total))
            for (const auto& i : dual_.basis(total - c.bidegree())) {
                const DualElement slice = dual_.coproduct_slice(i, a);
                if (auto it = slice.terms().find(TermKey<1>{c, {b}}); it != slice.terms().end())
                    out.add(c, {i}, mul_mod(it->second, sign, p));
            }
        return out;
    }
    // In a fixed bidegree the coefficient is determined by the degrees, so
    // every index entry for (a, b) contributes.
    for (CoeffMonomial c : coefficient_shifts(total)) {
        const PairIndex& index = coproduct_index(total - c.bidegree());
        if (auto it = index.find({a, b}); it != index.end())
            for (const auto& e : it->second)
                out.add(c, {e.i}, mul_mod(e.c, sign, p));
    }
    return out;
}

const MilnorAlgebra::PairIndex& MilnorAlgebra::coproduct_index(Bidegree bd) const
{
    {
        std::lock_guard lock(mutex_);
        if (auto it = index_cache_.find(bd); it != index_cache_.end())
            return it->second;
    }
    PairIndex index;
    for (const auto& i : dual_.basis(bd))
        for (const auto& [k, c] : dual_.coproduct(i).terms())
            index[{k.monos[0], k.monos[1]}].push_back({i, c});
    std::lock_guard lock(mutex_);
    return index_cache_.try_emplace(bd, std::move(index)).first->second;
}

OpElement MilnorAlgebra::cap(const OpElement& th, const DualMonomial& y) const
{
    const std::uint32_t p = prime();
    const Bidegree dy = y.bidegree(p);
    OpElement out(ring());
    for (const auto& [k, c] : th.terms()) {
        const DualMonomial& a = k.monos[0];
        const Bidegree target = a.bidegree(p) - dy;
        if (target.d < 0 || target.w < 0)
            continue;
        for (CoeffMonomial shift : coefficient_shifts(target)) {
            for (const auto& cand : dual_.basis(target - shift.bidegree())) {
                for (const auto& t : dual_.mul(y, cand)) {
                    if (t.mono == a && t.coeff == shift)
                        out.add(k.coeff * shift, {cand}, mul_mod(c, t.c, p));
                }
            }
        }
    }
    return out;
}

OpElement MilnorAlgebra::commute(const DualMonomial& a, CoeffMonomial c) const
{
    if (!dual_.twisted() || c.tau == 0) {
        OpElement out(ring());
        out.add(c, {a}, 1);
        return out;
    }
    const auto key = std::make_pair(a, c);
    {
        std::lock_guard lock(mutex_);
        if (auto it = commute_cache_.find(key); it != commute_cache_.end())
            return it->second;
    }
    auto value = compute_commute(a, c);
    std::lock_guard lock(mutex_);
    return commute_cache_.try_emplace(key, std::move(value)).first->second;
}

OpElement MilnorAlgebra::compute_commute(const DualMonomial& a, CoeffMonomial c) const
{
    OpElement out(ring());
    // rho_A * tau^t rho^r = sum_{k subset t} tau^{t-k} rho^{r+k} (rho_A cap tau_0^k)
    OpElement capped = element(a);
    for (std::uint32_t k = 0; k <= c.tau; ++k) {
        if (k > 0)
            capped = cap(capped, DualMonomial::tau(0));
        if (capped.is_zero())
            break;
        if ((k & ~c.tau) != 0)
            continue;
        out.add_scaled(capped, CoeffMonomial{c.tau - k, c.rho + k}, 1);
    }
    return out;
}

OpElement MilnorAlgebra::mul(const OpElement& a, const OpElement& b) const
{
    require_same_ring(a.ring(), ring(), "op_mul");
    require_same_ring(b.ring(), ring(), "op_mul");
    const std::uint32_t p = prime();
    OpElement out(ring());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            const auto moved = commute(ka.monos[0], kb.coeff);
            for (const auto& [km, cm] : moved.terms())
                out.add_scaled(mul_basis(km.monos[0], kb.monos[0]), ka.coeff * km.coeff,
                               mul_mod(mul_mod(ca, cb, p), cm, p));
        }
    }
    return out;
}

const OpTensor& MilnorAlgebra::coproduct_basis(const DualMonomial& k) const
{
    {
        std::lock_guard lock(mutex_);
        if (auto it = coproduct_cache_.find(k); it != coproduct_cache_.end())
            return it->second;
    }
    auto value = compute_coproduct(k);
    std::lock_guard lock(mutex_);
    return coproduct_cache_.try_emplace(k, std::move(value)).first->second;
}

OpTensor MilnorAlgebra::compute_coproduct(const DualMonomial& k) const
{
    const std::uint32_t p = prime();
    const Bidegree dk = k.bidegree(p);
    check_window(dk.d, "operation coproduct");
    OpTensor out(ring());
    // <omega_I (x) omega_J, psi^*(rho_K)> is the coefficient of c omega_K in
    // omega_I omega_J, where |I| + |J| = |K| - |c|; the Koszul sign of the
    // tensor pairing is folded into the stored coefficient.
    for (CoeffMonomial c : coefficient_shifts(dk)) {
        const Bidegree total = dk - c.bidegree();
        for (int d1 = 0; d1 <= total.d; ++d1) {
            for (int w1 = 0; w1 <= total.w; ++w1) {
                const auto& left = dual_.basis({d1, w1});
                if (left.empty())
                    continue;
                const auto& right = dual_.basis(total - Bidegree{d1, w1});
                for (const auto& i : left) {
                    for (const auto& j : right) {
                        for (const auto& t : dual_.mul(i, j)) {
                            if (t.mono != k || t.coeff != c)
                                continue;
                            std::uint32_t v = t.c;
                            if (p != 2 && i.odd(p) && j.odd(p))
                                v = neg_mod(v, p);
                            out.add(c, {i, j}, v);
                        }
                    }
                }
            }
        }
    }
    return out;
}

OpTensor MilnorAlgebra::coproduct(const OpElement& th) const
{
    require_same_ring(th.ring(), ring(), "op_coproduct");
    OpTensor out(ring());
    for (const auto& [k, c] : th.terms())
        out.add_scaled(coproduct_basis(k.monos[0]), k.coeff, c);
    return out;
}

OpTensor MilnorAlgebra::outer(const OpElement& a, const OpElement& b) const
{
    const std::uint32_t p = prime();
    OpTensor out(ring());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            out.add(ka.coeff * kb.coeff, {ka.monos[0], kb.monos[0]}, mul_mod(ca, cb, p));
    return out;
}

OpTensor MilnorAlgebra::tensor_mul(const OpTensor& a, const OpTensor& b) const
{
    const std::uint32_t p = prime();
    OpTensor out(ring());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            std::uint32_t sign = (p != 2 && ka.monos[1].odd(p) && kb.monos[0].odd(p)) ? p - 1 : 1;
            OpElement first = mul(element(ka.monos[0]), element(kb.monos[0], Coeff::monomial(ring(), 1, kb.coeff)));
            const OpElement& second = mul_basis(ka.monos[1], kb.monos[1]);
            OpTensor prod = outer(first, second);
            out.add_scaled(prod, ka.coeff, mul_mod(mul_mod(ca, cb, p), sign, p));
        }
    }
    return out;
}

Coeff MilnorAlgebra::pair_tensor(const DualMonomial& x, const DualMonomial& y, const OpTensor& psi) const
{
    Coeff out = psi.coefficient({x, y});
    if (prime() != 2 && x.odd(prime()) && y.odd(prime()))
        out = -out;
    return out;
}

OpElement MilnorAlgebra::one() const { return element(DualMonomial::one()); }

OpElement MilnorAlgebra::q_class(const std::vector<int>& e) const { return element(DualMonomial::from(e, {})); }

OpElement MilnorAlgebra::milnor_primitive(int t) const { return element(DualMonomial::tau(t)); }

OpElement MilnorAlgebra::xi_dual(const std::vector<std::uint32_t>& r) const
{
    return element(DualMonomial::from({}, r));
}

OpElement MilnorAlgebra::reduced_power(std::uint32_t i) const
{
    return i == 0 ? one() : element(DualMonomial::xi_power(1, i));
}

OpElement MilnorAlgebra::bockstein() const { return milnor_primitive(0); }

OpElement MilnorAlgebra::q_op(int t) const
{
    if (t < 1)
        throw ContractError("q_t needs t >= 1");
    return element(DualMonomial::xi_power(t, 1));
}

OpElement MilnorAlgebra::sq(std::uint32_t i) const
{
    if (prime() != 2)
        throw ContractError("Sq^i is defined only at p = 2");
    if (i % 2 == 0)
        return reduced_power(i / 2);
    return mul(bockstein(), reduced_power(i / 2));
}

OpElement MilnorAlgebra::m_class(int k) const
{
    if (k < 0)
        throw ContractError("M_k needs k >= 0");
    OpElement out = one();
    // P^{p^{k-1}} ... P^p P^1: the rightmost factor acts first.
    for (int j = 0; j < k; ++j)
        out = mul(reduced_power(std::uint32_t(ipow(prime(), unsigned(j)))), out);
    return out;
}

OpTensor MilnorAlgebra::cartan_closed_form(std::uint32_t i, CartanKind kind) const
{
    const Ring& r = ring();
    OpTensor out(r);
    switch (kind) {
    case CartanKind::Beta:
        out.add_scaled(outer(bockstein(), one()));
        out.add_scaled(outer(one(), bockstein()));
        break;
    case CartanKind::P:
        for (std::uint32_t k = 0; k <= i; ++k)
            out.add_scaled(outer(reduced_power(k), reduced_power(i - k)));
        break;
    case CartanKind::SqEven:
        for (std::uint32_t k = 0; k <= i; ++k)
            out.add_scaled(outer(sq(2 * k), sq(2 * i - 2 * k)));
        for (std::uint32_t s = 0; s < i; ++s)
            out.add_scaled(outer(sq(2 * s + 1), sq(2 * i - 2 * s - 1)), CoeffMonomial{1, 0}, 1);
        break;
    case CartanKind::SqOdd:
        for (std::uint32_t k = 0; k <= i; ++k) {
            out.add_scaled(outer(sq(2 * k + 1), sq(2 * i - 2 * k)));
            out.add_scaled(outer(sq(2 * k), sq(2 * i - 2 * k + 1)));
        }
        for (std::uint32_t s = 0; s < i; ++s)
            out.add_scaled(outer(sq(2 * s + 1), sq(2 * i - 2 * s - 1)), CoeffMonomial{0, 1}, 1);
        break;
    }
    return out;
}

OpTensor MilnorAlgebra::primitive_coproduct_closed_form(int t) const
{
    OpTensor out(ring());
    out.add(CoeffMonomial{}, {DualMonomial::tau(t), DualMonomial::one()}, 1);
    out.add(CoeffMonomial{}, {DualMonomial::one(), DualMonomial::tau(t)}, 1);
    if (prime() != 2)
        return out;
    // rho^h sum over I u J = {t-h, ..., t-1}, I n J = {t-h}.
    for (int h = 1; h <= t; ++h) {
        const int low = t - h, free_count = h - 1;
        for (std::uint32_t split = 0; split < (1u << free_count); ++split) {
            DualMonomial left = DualMonomial::tau(low), right = DualMonomial::tau(low);
            for (int b = 0; b < free_count; ++b) {
                int idx = low + 1 + b;
                if ((split >> b) & 1u)
                    left.tau_mask |= 1u << idx;
                else
                    right.tau_mask |= 1u << idx;
            }
            out.add(CoeffMonomial{0, std::uint32_t(h)}, {left, right}, 1);
        }
    }
    return out;
}

std::optional<Bidegree> MilnorAlgebra::bidegree(const OpElement& th) const
{
    std::optional<Bidegree> out;
    for (const auto& [k, c] : th.terms()) {
        Bidegree bd = k.monos[0].bidegree(prime()) + k.coeff.bidegree();
        if (out && *out != bd)
            return std::nullopt;
        out = bd;
    }
    return out;
}

}  // namespace motsteen
