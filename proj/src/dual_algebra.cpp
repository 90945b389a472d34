#include "motsteen/dual_algebra.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace motsteen {

namespace {

void add_xi(DualMonomial& m, int j, std::uint64_t r)
{
    if (j < 1 || j > DualMonomial::kMaxXi)
        throw WindowError("xi index " + std::to_string(j) + " out of range");
    std::uint64_t total = m.xi[j - 1] + r;
    if (total > std::numeric_limits<std::uint16_t>::max())
        throw WindowError("xi_" + std::to_string(j) + " exponent out of range");
    m.xi[j - 1] = std::uint16_t(total);
}

void combine(std::vector<ProductTerm>& terms, std::uint32_t p)
{
    std::vector<ProductTerm> out;
    for (const auto& t : terms) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const ProductTerm& o) { return o.coeff == t.coeff && o.mono == t.mono; });
        if (it == out.end())
            out.push_back(t);
        else
            it->c = add_mod(it->c, t.c, p);
    }
    std::erase_if(out, [](const ProductTerm& t) { return t.c == 0; });
    terms = std::move(out);
}

}  // namespace

std::uint32_t koszul_sign(std::uint32_t a_mask, std::uint32_t b_mask, std::uint32_t p)
{
    if (p == 2)
        return 1;
    int inversions = 0;
    for (std::uint32_t mask = b_mask; mask; mask &= mask - 1) {
        int j = std::countr_zero(mask);
        inversions += j >= 31 ? 0 : std::popcount(a_mask >> (j + 1));
    }
    return inversions & 1 ? p - 1 : 1;
}

DualSteenrod::DualSteenrod(Ring ring, CrossingRule rule) : ring_(Ring::make(ring.p, ring.mode)), rule_(rule) {}

DualSteenrod::~DualSteenrod() = default;

bool DualSteenrod::twisted() const
{
    return ring_.p == 2 && rule_ == CrossingRule::RightUnit && ring_.keeps_tau() && ring_.keeps_rho();
}

DualElement DualSteenrod::element(const DualMonomial& m, const Coeff& c) const
{
    return DualElement::monomial(ring_, {m}, c);
}

DualElement DualSteenrod::element(const DualMonomial& m) const { return element(m, Coeff::one(ring_)); }

const std::vector<ProductTerm>& DualSteenrod::mul(const DualMonomial& a, const DualMonomial& b) const
{
    auto key = std::make_pair(a, b);
    {
        std::lock_guard lock(mutex_);
        if (auto it = mul_cache_.find(key); it != mul_cache_.end())
            return it->second;
    }
    auto value = compute_mul(a, b);
    std::lock_guard lock(mutex_);
    return mul_cache_.try_emplace(key, std::move(value)).first->second;
}

std::span<const ProductTerm> DualSteenrod::product(const DualMonomial& a, const DualMonomial& b,
                                                   ProductTerm& scratch) const
{
    if ((a.tau_mask & b.tau_mask) != 0)
        return mul(a, b);
    DualMonomial m = a;
    m.tau_mask |= b.tau_mask;
    for (int j = 0; j < DualMonomial::kMaxXi; ++j) {
        const std::uint32_t e = std::uint32_t(a.xi[j]) + b.xi[j];
        if (e > std::numeric_limits<std::uint16_t>::max())
            return mul(a, b);
        m.xi[j] = std::uint16_t(e);
    }
    scratch = {CoeffMonomial{}, m, ring_.p == 2 ? 1u : koszul_sign(a.tau_mask, b.tau_mask, ring_.p)};
    return {&scratch, 1};
}

std::vector<ProductTerm> DualSteenrod::compute_mul(const DualMonomial& a, const DualMonomial& b) const
{
    const std::uint32_t p = ring_.p;
    DualMonomial base = a;
    for (int j = 1; j <= DualMonomial::kMaxXi; ++j)
        if (b.xi[j - 1])
            add_xi(base, j, b.xi[j - 1]);

    if (p != 2) {
        if (a.tau_mask & b.tau_mask)
            return {};
        base.tau_mask |= b.tau_mask;
        return {{CoeffMonomial{}, base, koszul_sign(a.tau_mask, b.tau_mask, p)}};
    }

    // p = 2: tau_i^2 = tau xi_{i+1} + rho tau_{i+1} + rho tau_0 xi_{i+1}.  Each
    // rewrite removes one tau factor, so the depth is bounded by the tau count.
    const CoeffMonomial tau_c{1, 0}, rho_c{0, 1};
    std::vector<ProductTerm> out;
    auto insert_tau = [&](auto&& self, CoeffMonomial coeff, DualMonomial mono, int i, int depth) -> void {
        if (depth > DualMonomial::kMaxTau)
            throw std::logic_error("tau rewriting did not terminate");
        if (i >= DualMonomial::kMaxTau)
            throw WindowError("tau index " + std::to_string(i) + " out of range");
        if (!mono.has_tau(i)) {
            mono.tau_mask |= 1u << i;
            out.push_back({coeff, mono, 1});
            return;
        }
        mono.tau_mask &= ~(1u << i);
        DualMonomial with_xi = mono;
        add_xi(with_xi, i + 1, 1);
        if (admits(ring_, coeff * tau_c))
            out.push_back({coeff * tau_c, with_xi, 1});
        if (admits(ring_, coeff * rho_c)) {
            self(self, coeff * rho_c, mono, i + 1, depth + 1);
            self(self, coeff * rho_c, with_xi, 0, depth + 1);
        }
    };

    std::vector<ProductTerm> current{{CoeffMonomial{}, base, 1}};
    for (std::uint32_t mask = b.tau_mask; mask; mask &= mask - 1) {
        int j = std::countr_zero(mask);
        out.clear();
        for (const auto& t : current)
            insert_tau(insert_tau, t.coeff, t.mono, j, 0);
        combine(out, p);
        current = out;
    }
    return current;
}

DualElement DualSteenrod::mul(const DualElement& a, const DualElement& b) const
{
    require_same_ring(a.ring(), ring_, "dual_mul");
    require_same_ring(b.ring(), ring_, "dual_mul");
    DualElement out(ring_);
    ProductTerm scratch;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            for (const auto& t : product(ka.monos[0], kb.monos[0], scratch))
                out.add(ka.coeff * kb.coeff * t.coeff, {t.mono}, mul_mod(mul_mod(ca, cb, ring_.p), t.c, ring_.p));
    return out;
}

DualElement DualSteenrod::normalize(std::span<const RawFactor> word, const Coeff& c) const
{
    DualElement x = element(DualMonomial::one(), c);
    for (const auto& f : word) {
        if (f.exponent == 0)
            continue;
        if (!f.is_tau) {
            if (f.index == 0)
                continue;  // xi_0 = 1
            x = mul(x, element(DualMonomial::xi_power(f.index, f.exponent)));
            continue;
        }
        auto g = element(DualMonomial::tau(f.index));
        for (std::uint32_t e = 0; e < f.exponent && !x.is_zero(); ++e)
            x = mul(x, g);
    }
    return x;
}

void DualSteenrod::cross(std::vector<ProductTerm>& out, const DualMonomial& m, CoeffMonomial coeff,
                         std::uint32_t scale) const
{
    if (!twisted() || coeff.tau == 0) {
        out.push_back({coeff, m, scale});
        return;
    }
    // m * (tau + rho tau_0)^a rho^b, binomials read mod 2 by Lucas.
    const std::uint32_t a = coeff.tau;
    std::vector<ProductTerm> power{{CoeffMonomial{}, m, 1}};  // m * tau_0^k
    ProductTerm scratch;
    for (std::uint32_t k = 0; k <= a; ++k) {
        if (k > 0) {
            std::vector<ProductTerm> next;
            for (const auto& t : power)
                for (const auto& u : product(t.mono, DualMonomial::tau(0), scratch))
                    next.push_back({t.coeff * u.coeff, u.mono, mul_mod(t.c, u.c, 2)});
            combine(next, 2);
            power = std::move(next);
        }
        if ((k & ~a) != 0)
            continue;
        CoeffMonomial shift{a - k, coeff.rho + k};
        for (const auto& t : power)
            out.push_back({shift * t.coeff, t.mono, mul_mod(scale, t.c, 2)});
    }
}

DualElement DualSteenrod::right_unit(const Coeff& c) const
{
    require_same_ring(c.ring(), ring_, "right_unit");
    std::vector<ProductTerm> tmp;
    for (const auto& t : c.terms())
        cross(tmp, DualMonomial::one(), t.mono, t.c);
    DualElement out(ring_);
    for (const auto& t : tmp)
        out.add(t.coeff, {t.mono}, t.c);
    return out;
}

DualTensor DualSteenrod::generator_coproduct(const DualMonomial& g) const
{
    const std::uint32_t p = ring_.p;
    DualTensor out(ring_);
    auto xi_pow = [&](int j, std::uint64_t e) {
        if (j == 0)
            return DualMonomial::one();
        if (e > std::numeric_limits<std::uint16_t>::max())
            throw WindowError("xi exponent out of range in coproduct");
        return DualMonomial::xi_power(j, std::uint32_t(e));
    };
    if (g.tau_count() == 1) {
        int k = g.tau_top();
        out.add(CoeffMonomial{}, {g, DualMonomial::one()}, 1);
        for (int i = 0; i <= k; ++i)
            out.add(CoeffMonomial{}, {xi_pow(k - i, ipow(p, unsigned(i))), DualMonomial::tau(i)}, 1);
    }
    else {
        int k = g.xi_length();
        for (int i = 0; i <= k; ++i)
            out.add(CoeffMonomial{}, {xi_pow(k - i, ipow(p, unsigned(i))), xi_pow(i, 1)}, 1);
    }
    return out;
}

const DualTensor& DualSteenrod::coproduct(const DualMonomial& m) const
{
    {
        std::lock_guard lock(mutex_);
        if (auto it = coproduct_cache_.find(m); it != coproduct_cache_.end())
            return it->second;
    }
    auto value = compute_coproduct(m);
    std::lock_guard lock(mutex_);
    return coproduct_cache_.try_emplace(m, std::move(value)).first->second;
}

DualTensor DualSteenrod::compute_coproduct(const DualMonomial& m) const
{
    if (m.is_one()) {
        DualTensor out(ring_);
        out.add(CoeffMonomial{}, {m, m}, 1);
        return out;
    }
    DualMonomial rest = m, g;
    int xi_total = 0;
    for (auto r : m.xi)
        xi_total += r;
    if (m.tau_count() + xi_total == 1)
        return generator_coproduct(m);
    // Split off one generator so that rest * g equals m with coefficient 1.
    int j = 0;
    for (int k = 1; k <= DualMonomial::kMaxXi && !j; ++k)
        if (m.xi[k - 1])
            j = k;
    if (j) {
        rest.xi[j - 1] -= 1;
        g = DualMonomial::xi_power(j, 1);
    }
    else {
        int top = m.tau_top();
        rest.tau_mask &= ~(1u << top);
        g = DualMonomial::tau(top);
    }
    return tensor_mul(coproduct(rest), coproduct(g));
}

namespace {

bool divides(const DualMonomial& a, const DualMonomial& b)
{
    if ((a.tau_mask & ~b.tau_mask) != 0)
        return false;
    for (int j = 0; j < DualMonomial::kMaxXi; ++j)
        if (a.xi[j] > b.xi[j])
            return false;
    return true;
}

}  // namespace

DualElement DualSteenrod::coproduct_slice(const DualMonomial& m, const DualMonomial& left) const
{
    if (twisted())
        throw ContractError("coproduct_slice needs an untwisted right unit");
    const std::uint32_t p = ring_.p;
    std::vector<DualMonomial> gens;
    for (int i = 0; i < DualMonomial::kMaxTau; ++i)
        if (m.has_tau(i))
            gens.push_back(DualMonomial::tau(i));
    for (int j = DualMonomial::kMaxXi; j >= 1; --j)
        for (std::uint32_t e = 0; e < m.r(j); ++e)
            gens.push_back(DualMonomial::xi_power(j, 1));
    DualTensor state(ring_);
    state.add(CoeffMonomial{}, {DualMonomial::one(), DualMonomial::one()}, 1);
    ProductTerm scratch;
    for (const auto& g : gens) {
        const DualTensor factor = generator_coproduct(g);
        DualTensor next(ring_);
        for (const auto& [ks, cs] : state.terms()) {
            for (const auto& [kf, cf] : factor.terms()) {
                const DualMonomial& l2 = kf.monos[0];
                if ((ks.monos[0].tau_mask & l2.tau_mask) != 0)
                    continue;
                DualMonomial l = ks.monos[0];
                l.tau_mask |= l2.tau_mask;
                for (int j = 0; j < DualMonomial::kMaxXi; ++j)
                    l.xi[j] = std::uint16_t(l.xi[j] + l2.xi[j]);
                if (!divides(l, left))
                    continue;
                std::uint32_t c = mul_mod(cs, cf, p);
                if (p != 2) {
                    c = mul_mod(c, koszul_sign(ks.monos[0].tau_mask, l2.tau_mask, p), p);
                    if (ks.monos[1].odd(p) && l2.odd(p))
                        c = neg_mod(c, p);
                }
                for (const auto& r : product(ks.monos[1], kf.monos[1], scratch))
                    next.add(ks.coeff * r.coeff, {l, r.mono}, mul_mod(c, r.c, p));
            }
        }
        state = std::move(next);
    }
    DualElement out(ring_);
    for (const auto& [k, c] : state.terms())
        if (k.monos[0] == left)
            out.add(k.coeff, {k.monos[1]}, c);
    return out;
}

DualTensor DualSteenrod::coproduct(const DualElement& x) const
{
    require_same_ring(x.ring(), ring_, "dual_coproduct");
    DualTensor out(ring_);
    for (const auto& [k, c] : x.terms())
        out.add_scaled(coproduct(k.monos[0]), k.coeff, c);
    return out;
}

DualTensor DualSteenrod::tensor_mul(const DualTensor& x, const DualTensor& y) const
{
    const std::uint32_t p = ring_.p;
    DualTensor out(ring_);
    std::vector<ProductTerm> crossed;
    ProductTerm left_scratch, right_scratch;
    for (const auto& [kx, cx] : x.terms()) {
        for (const auto& [ky, cy] : y.terms()) {
            std::uint32_t c = mul_mod(cx, cy, p);
            if (p != 2 && kx.monos[1].odd(p) && ky.monos[0].odd(p))
                c = neg_mod(c, p);
            const CoeffMonomial base = kx.coeff * ky.coeff;
            const auto left = product(kx.monos[0], ky.monos[0], left_scratch);
            if (left.empty())
                continue;
            const auto right = product(kx.monos[1], ky.monos[1], right_scratch);
            for (const auto& r : right) {
                for (const auto& l : left) {
                    crossed.clear();
                    cross(crossed, l.mono, r.coeff, 1);
                    std::uint32_t lr = mul_mod(mul_mod(c, l.c, p), r.c, p);
                    for (const auto& t : crossed)
                        out.add(base * l.coeff * t.coeff, {t.mono, r.mono}, mul_mod(lr, t.c, p));
                }
            }
        }
    }
    return out;
}

DualTensor3 DualSteenrod::coproduct_left(const DualTensor& x) const
{
    DualTensor3 out(ring_);
    for (const auto& [k, c] : x.terms())
        for (const auto& [k2, c2] : coproduct(k.monos[0]).terms())
            out.add(k.coeff * k2.coeff, {k2.monos[0], k2.monos[1], k.monos[1]}, mul_mod(c, c2, ring_.p));
    return out;
}

DualTensor3 DualSteenrod::coproduct_right(const DualTensor& x) const
{
    DualTensor3 out(ring_);
    std::vector<ProductTerm> crossed;
    for (const auto& [k, c] : x.terms()) {
        for (const auto& [k2, c2] : coproduct(k.monos[1]).terms()) {
            crossed.clear();
            cross(crossed, k.monos[0], k2.coeff, mul_mod(c, c2, ring_.p));
            for (const auto& t : crossed)
                out.add(k.coeff * t.coeff, {t.mono, k2.monos[0], k2.monos[1]}, t.c);
        }
    }
    return out;
}

DualElement DualSteenrod::counit_left(const DualTensor& x) const
{
    DualElement out(ring_);
    for (const auto& [k, c] : x.terms())
        if (k.monos[0].is_one())
            out.add(k.coeff, {k.monos[1]}, c);
    return out;
}

DualElement DualSteenrod::counit_right(const DualTensor& x) const
{
    DualElement out(ring_);
    for (const auto& [k, c] : x.terms())
        if (k.monos[1].is_one())
            out.add(k.coeff, {k.monos[0]}, c);
    return out;
}

const std::vector<DualMonomial>& DualSteenrod::basis(Bidegree bd) const
{
    {
        std::lock_guard lock(mutex_);
        if (auto it = basis_cache_.find(bd); it != basis_cache_.end())
            return it->second;
    }
    auto value = compute_basis(bd);
    std::lock_guard lock(mutex_);
    return basis_cache_.try_emplace(bd, std::move(value)).first->second;
}

std::vector<DualMonomial> DualSteenrod::compute_basis(Bidegree bd) const
{
    const std::uint32_t p = ring_.p;
    std::vector<DualMonomial> out;
    const int taus = bd.d - 2 * bd.w;
    if (bd.d < 0 || bd.w < 0 || taus < 0)
        return out;

    auto tau_d = [&](int i) -> std::int64_t {
        if (i >= DualMonomial::kMaxTau)
            return std::numeric_limits<std::int64_t>::max();
        std::uint64_t q = 1;
        for (int k = 0; k < i; ++k) {
            q *= p;
            if (q > std::uint64_t(bd.d) + 1)
                return std::numeric_limits<std::int64_t>::max();
        }
        return std::int64_t(2 * q - 1);
    };
    auto xi_w = [&](int j) -> std::int64_t {
        std::uint64_t q = 1;
        for (int k = 0; k < j; ++k) {
            q *= p;
            if (q > std::uint64_t(bd.w) + 1)
                return std::numeric_limits<std::int64_t>::max();
        }
        return std::int64_t(q - 1);
    };

    // xi part: weight w with d = 2w, exponents chosen from the top index down.
    auto fill_xi = [&](auto&& self, DualMonomial m, int j, std::int64_t w) -> void {
        if (w == 0) {
            out.push_back(m);
            return;
        }
        if (j == 0)
            return;
        std::int64_t step = xi_w(j);
        if (j > DualMonomial::kMaxXi || step > w) {
            self(self, m, j - 1, w);
            return;
        }
        for (std::int64_t r = w / step; r >= 0; --r) {
            DualMonomial next = m;
            if (r > std::numeric_limits<std::uint16_t>::max())
                throw WindowError("xi exponent out of range in basis");
            next.xi[j - 1] = std::uint16_t(r);
            self(self, next, j - 1, w - r * step);
        }
    };
    int top_xi = 0;
    while (top_xi < DualMonomial::kMaxXi && xi_w(top_xi + 1) <= bd.w)
        ++top_xi;

    auto pick_tau = [&](auto&& self, DualMonomial m, int i, int left, std::int64_t d, std::int64_t w) -> void {
        if (left == 0) {
            if (d == 2 * w)
                fill_xi(fill_xi, m, top_xi, w);
            return;
        }
        for (int k = i; tau_d(k) <= d; ++k) {
            std::int64_t dk = tau_d(k), wk = (dk - 1) / 2;
            DualMonomial next = m;
            next.tau_mask |= 1u << k;
            self(self, next, k + 1, left - 1, d - dk, w - wk);
        }
    };
    pick_tau(pick_tau, DualMonomial::one(), 0, taus, bd.d, bd.w);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

std::uint64_t DualSteenrod::fp_dimension(Bidegree bd) const
{
    const int excess = bd.d - 2 * bd.w;
    if (excess < 0)
        return 0;
    std::uint64_t total = 0;
    for (int b = 0; b <= excess; ++b) {
        for (int a = 0; 2 * a + b <= excess; ++a) {
            if (!admits(ring_, CoeffMonomial{std::uint32_t(a), std::uint32_t(b)}))
                continue;
            total += basis({bd.d + b, bd.w + a + b}).size();
        }
    }
    return total;
}

std::vector<DualMonomial> DualSteenrod::monomials_up_to(int max_d) const
{
    std::vector<DualMonomial> out;
    for (int d = 0; d <= max_d; ++d)
        for (int w = 0; 2 * w <= d; ++w)
            for (const auto& m : basis({d, w}))
                out.push_back(m);
    return out;
}

}  // namespace motsteen
