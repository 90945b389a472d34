#include "motsteen/bmu.hpp"

#include <limits>
#include <unordered_map>

namespace motsteen {

std::string format_bmu_monomial(BmuMonomial m)
{
    std::string out;
    if (m.u)
        out = "u";
    if (m.v) {
        if (!out.empty())
            out += ' ';
        out += "v";
        if (m.v > 1)
            out += "^" + std::to_string(m.v);
    }
    return out.empty() ? "1" : out;
}

BmuElement BmuElement::monomial(Ring ring, BmuMonomial m, const Coeff& c)
{
    BmuElement out(ring);
    for (const auto& t : c.terms())
        out.add(t.mono, m, t.c);
    return out;
}

std::uint32_t BmuElement::max_v() const
{
    std::uint32_t out = 0;
    for (const auto& [k, c] : terms_)
        out = std::max(out, k.second.v);
    return out;
}

void BmuElement::add(CoeffMonomial coeff, BmuMonomial m, std::uint32_t c)
{
    c %= ring_.p;
    if (c == 0 || !admits(ring_, coeff))
        return;
    if (m.u > 1)
        throw Error("unreduced u power in B mu_p element");
    auto [it, inserted] = terms_.try_emplace(Key{coeff, m}, c);
    if (!inserted) {
        it->second = add_mod(it->second, c, ring_.p);
        if (it->second == 0)
            terms_.erase(it);
    }
}

void BmuElement::add_scaled(const BmuElement& x, CoeffMonomial coeff, std::uint32_t c)
{
    require_same_ring(ring_, x.ring_, "B mu_p element");
    for (const auto& [k, r] : x.terms_)
        add(k.first * coeff, k.second, mul_mod(r, c % ring_.p, ring_.p));
}

Coeff BmuElement::coefficient(BmuMonomial m) const
{
    Coeff out(ring_);
    for (const auto& [k, c] : terms_)
        if (k.second == m)
            out.add_term(k.first, c);
    return out;
}

BmuElement operator+(const BmuElement& a, const BmuElement& b)
{
    BmuElement out = a;
    out.add_scaled(b, {}, 1);
    return out;
}

BmuElement operator-(const BmuElement& a, const BmuElement& b)
{
    BmuElement out = a;
    out.add_scaled(b, {}, a.ring_.p - 1);
    return out;
}

std::string to_string(const BmuElement& x)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [k, c] : x.terms()) {
        if (!out.empty())
            out += " + ";
        const bool unit = k.second.u == 0 && k.second.v == 0;
        if (unit)
            out += format_coeff_term(c, k.first);
        else if (c == 1 && k.first.is_one())
            out += format_bmu_monomial(k.second);
        else
            out += format_coeff_term(c, k.first) + "*" + format_bmu_monomial(k.second);
    }
    return out;
}

namespace {

struct LambdaKey {
    CoeffMonomial coeff;
    BmuMonomial m;
    DualMonomial omega;
    friend bool operator==(const LambdaKey&, const LambdaKey&) = default;
};

struct LambdaKeyHash {
    std::size_t operator()(const LambdaKey& k) const noexcept
    {
        return (std::hash<CoeffMonomial>{}(k.coeff) * 1000003u) ^ (std::size_t(k.m.v) * 2 + k.m.u) * 7919u ^
               DualMonomialHash{}(k.omega);
    }
};

using LambdaMap = std::unordered_map<LambdaKey, std::uint32_t, LambdaKeyHash>;

void accumulate(LambdaMap& out, const LambdaKey& k, std::uint32_t c, const Ring& ring)
{
    c %= ring.p;
    if (c == 0 || !admits(ring, k.coeff))
        return;
    auto [it, inserted] = out.try_emplace(k, c);
    if (!inserted) {
        it->second = add_mod(it->second, c, ring.p);
        if (it->second == 0)
            out.erase(it);
    }
}

// u^e1 v^n1 * u^e2 v^n2 with u^2 reduced.
struct BmuProductTerm {
    CoeffMonomial coeff;
    BmuMonomial m;
};

void bmu_product(BmuMonomial a, BmuMonomial b, std::uint32_t p, std::vector<BmuProductTerm>& out)
{
    out.clear();
    const std::uint32_t n = a.v + b.v;
    if (!(a.u && b.u)) {
        out.push_back({{}, {std::uint8_t(a.u + b.u), n}});
        return;
    }
    if (p != 2)
        return;
    out.push_back({{1, 0}, {0, n + 1}});  // tau v
    out.push_back({{0, 1}, {1, n}});      // rho u
}

}  // namespace

BmuComodule::BmuComodule(const MilnorAlgebra& algebra, std::uint32_t truncation)
    : algebra_(algebra), truncation_(truncation)
{
}

BmuElement BmuComodule::element(BmuMonomial m) const { return element(m, Coeff::one(ring())); }

BmuElement BmuComodule::element(BmuMonomial m, const Coeff& c) const
{
    if (m.u > 1) {
        BmuElement out = element({0, m.v}, c);
        for (std::uint8_t k = 0; k < m.u; ++k)
            out = mul(out, u());
        return out;
    }
    if (m.v > truncation_ && !c.is_zero())
        throw TruncationError(format_bmu_monomial(m) + " exceeds the truncation v^" + std::to_string(truncation_));
    return BmuElement::monomial(ring(), m, c);
}

BmuElement BmuComodule::mul_unbounded(const BmuElement& a, const BmuElement& b, std::uint32_t limit,
                                      bool strict) const
{
    const std::uint32_t p = ring().p;
    BmuElement out(ring());
    std::vector<BmuProductTerm> prod;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            bmu_product(ka.second, kb.second, p, prod);
            for (const auto& t : prod) {
                if (t.m.v > limit) {
                    if (strict && admits(ring(), ka.first * kb.first * t.coeff))
                        throw TruncationError("product term " + format_bmu_monomial(t.m) +
                                              " exceeds the truncation v^" + std::to_string(limit));
                    continue;
                }
                out.add(ka.first * kb.first * t.coeff, t.m, mul_mod(ca, cb, p));
            }
        }
    }
    return out;
}

BmuElement BmuComodule::mul(const BmuElement& a, const BmuElement& b) const
{
    require_same_ring(a.ring(), ring(), "bmu_mul");
    require_same_ring(b.ring(), ring(), "bmu_mul");
    return mul_unbounded(a, b, truncation_, true);
}

BmuElement BmuComodule::power(const BmuElement& x, std::uint32_t e) const
{
    BmuElement out = element({0, 0});
    for (std::uint32_t k = 0; k < e; ++k)
        out = mul(out, x);
    return out;
}

std::vector<LambdaTerm> BmuComodule::lambda(const BmuElement& x) const
{
    return lambda(x, truncation_, std::numeric_limits<int>::max());
}

std::vector<LambdaTerm> BmuComodule::lambda(const BmuElement& x, std::uint32_t limit, int max_omega_d) const
{
    const Ring& r = ring();
    const std::uint32_t p = r.p;
    const DualSteenrod& dual = algebra_.dual();

    auto keep = [&](const LambdaKey& k) {
        return k.m.v <= limit && k.omega.bidegree(p).d <= max_omega_d;
    };
    auto product = [&](const LambdaMap& a, const LambdaMap& b) {
        LambdaMap out;
        std::vector<BmuProductTerm> mm;
        for (const auto& [ka, ca] : a) {
            for (const auto& [kb, cb] : b) {
                if (ka.m.v + kb.m.v > limit)
                    continue;
                bmu_product(ka.m, kb.m, p, mm);
                if (mm.empty())
                    continue;
                std::uint32_t c = mul_mod(ca, cb, p);
                if (p != 2 && ka.omega.odd(p) && kb.m.odd())
                    c = neg_mod(c, p);
                for (const auto& w : dual.mul(ka.omega, kb.omega)) {
                    for (const auto& t : mm) {
                        LambdaKey k{ka.coeff * kb.coeff * t.coeff * w.coeff, t.m, w.mono};
                        if (keep(k))
                            accumulate(out, k, mul_mod(c, w.c, p), r);
                    }
                }
            }
        }
        return out;
    };

    LambdaMap lambda_u, lambda_v;
    accumulate(lambda_u, {{}, {1, 0}, DualMonomial::one()}, 1, r);
    accumulate(lambda_v, {{}, {0, 1}, DualMonomial::one()}, 1, r);
    for (int i = 0; ipow(p, unsigned(i)) <= limit; ++i) {
        std::uint32_t q = std::uint32_t(ipow(p, unsigned(i)));
        LambdaKey ku{{}, {0, q}, DualMonomial::tau(i)};
        if (keep(ku))
            accumulate(lambda_u, ku, 1, r);
        if (i >= 1) {
            LambdaKey kv{{}, {0, q}, DualMonomial::xi_power(i, 1)};
            if (keep(kv))
                accumulate(lambda_v, kv, 1, r);
        }
    }

    LambdaMap total;
    // Powers of lambda(v) are shared across terms of x.
    std::vector<LambdaMap> v_powers;
    v_powers.emplace_back();
    accumulate(v_powers.back(), {{}, {0, 0}, DualMonomial::one()}, 1, r);
    for (const auto& [kx, cx] : x.terms()) {
        const BmuMonomial m = kx.second;
        if (m.v > limit)
            continue;
        while (v_powers.size() <= m.v)
            v_powers.push_back(product(v_powers.back(), lambda_v));
        LambdaMap term = v_powers[m.v];
        if (m.u)
            term = product(lambda_u, term);
        // lambda(coefficient) = 1 (x) eta_R(coefficient)
        LambdaMap coeff_map;
        const DualElement eta = dual.right_unit(Coeff::monomial(r, 1, kx.first));
        for (const auto& [k, c] : eta.terms())
            accumulate(coeff_map, {k.coeff, {0, 0}, k.monos[0]}, c, r);
        term = product(coeff_map, term);
        for (const auto& [k, c] : term)
            accumulate(total, k, mul_mod(c, cx, p), r);
    }

    std::vector<LambdaTerm> out;
    out.reserve(total.size());
    for (const auto& [k, c] : total)
        out.push_back({k.coeff, k.m, k.omega, c});
    return out;
}

BmuElement BmuComodule::act(const OpElement& th, const BmuElement& x) const
{
    require_same_ring(th.ring(), ring(), "act");
    require_same_ring(x.ring(), ring(), "act");
    const std::uint32_t p = ring().p;
    int max_d = 0;
    std::unordered_map<DualMonomial, std::vector<std::pair<CoeffMonomial, std::uint32_t>>, DualMonomialHash> by_label;
    for (const auto& [k, c] : th.terms()) {
        max_d = std::max(max_d, k.monos[0].bidegree(p).d);
        by_label[k.monos[0]].emplace_back(k.coeff, c);
    }
    // Output terms c m satisfy |c| + |m| = |x| + |theta|, which bounds the v-exponent.
    std::uint32_t limit = truncation_;
    for (const auto& [k, c] : x.terms()) {
        std::int64_t d = std::int64_t(k.second.u) + 2 * std::int64_t(k.second.v) + k.first.rho + max_d;
        limit = std::max<std::uint32_t>(limit, std::uint32_t(d / 2));
    }
    BmuElement out(ring());
    for (const auto& t : lambda(x, limit, max_d)) {
        auto it = by_label.find(t.omega);
        if (it == by_label.end())
            continue;
        for (const auto& [coeff, c] : it->second)
            out.add(coeff * t.coeff, t.m, mul_mod(c, t.c, p));
    }
    if (out.max_v() > truncation_)
        throw TruncationError("result has v^" + std::to_string(out.max_v()) + ", beyond the truncation v^" +
                              std::to_string(truncation_));
    return out;
}

RotturaReport BmuComodule::verify_rottura(const OpElement& th, unsigned n) const
{
    const Ring& r = ring();
    const std::uint32_t p = r.p;
    const std::uint64_t q = ipow(p, n);
    if (q > truncation_)
        throw TruncationError("p^n = " + std::to_string(q) + " exceeds the truncation v^" +
                              std::to_string(truncation_));
    const DualSteenrod& dual = algebra_.dual();
    const int max_d = [&] {
        int d = 0;
        for (const auto& [k, c] : th.terms())
            d = std::max(d, k.monos[0].bidegree(p).d);
        return d;
    }();

    auto scaled = [&](const Coeff& c, const BmuElement& x) {
        BmuElement out(r);
        for (const auto& t : c.terms())
            out.add_scaled(x, t.mono, t.c);
        return out;
    };
    auto v_power = [&](std::uint64_t e, const Coeff& c) {
        if (c.is_zero())
            return BmuElement(r);
        if (e > truncation_)
            throw TruncationError("closed form needs v^" + std::to_string(e) + ", beyond the truncation");
        return element({0, std::uint32_t(e)}, c);
    };

    RotturaReport report{BmuElement(r), BmuElement(r), BmuElement(r), BmuElement(r)};
    const BmuElement u_q = power(u(), std::uint32_t(q));
    report.lhs_u = act(th, u_q);
    report.rhs_u = scaled(algebra_.pair(dual.element(DualMonomial::one()), th), u_q);
    for (int i = 0; q * (2 * ipow(p, unsigned(i)) - 1) <= std::uint64_t(max_d); ++i) {
        RawFactor f{true, i, std::uint32_t(q)};
        Coeff c = algebra_.pair(dual.normalize(std::span(&f, 1), Coeff::one(r)), th);
        report.rhs_u = report.rhs_u + v_power(ipow(p, unsigned(i)) * q, c);
    }

    report.lhs_v = act(th, element({0, std::uint32_t(q)}));
    for (int i = 0; i == 0 || q * 2 * (ipow(p, unsigned(i)) - 1) <= std::uint64_t(max_d); ++i) {
        RawFactor f{false, i, std::uint32_t(q)};
        Coeff c = algebra_.pair(dual.normalize(std::span(&f, 1), Coeff::one(r)), th);
        report.rhs_v = report.rhs_v + v_power(ipow(p, unsigned(i)) * q, c);
    }
    return report;
}

}  // namespace motsteen
