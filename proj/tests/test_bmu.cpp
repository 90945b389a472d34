#include "motsteen/bmu.hpp"
#include "motsteen/parse.hpp"
#include "motsteen/verify.hpp"

#include <doctest.h>

#include <random>

using namespace motsteen;

namespace {

struct Fixture {
    explicit Fixture(Ring ring, std::uint32_t truncation = 32, int max_d = 40)
        : dual(ring), algebra(dual, max_d), bmu(algebra, truncation)
    {
    }
    DualSteenrod dual;
    MilnorAlgebra algebra;
    BmuComodule bmu;

    BmuElement x(const char* s) const { return parse_bmu(s, bmu); }
    OpElement op(const char* s) const { return parse_op(s, algebra); }
    std::string act(const char* th, const char* s) const { return to_string(bmu.act(op(th), x(s))); }
};

const std::vector<Ring> kRings{Ring::make(2), Ring::make(2, BaseMode::RhoZero), Ring::make(3), Ring::make(5)};

// sum over psi^*(theta) = c theta' (x) theta'' of c theta'(x) theta''(y), with the Koszul sign at odd p.
BmuElement cartan_act(const Fixture& f, const OpTensor& psi, const BmuElement& x, const BmuElement& y, bool x_odd)
{
    const Ring& r = f.bmu.ring();
    BmuElement out(r);
    for (const auto& [k, c] : psi.terms()) {
        const BmuElement a = f.bmu.act(f.algebra.element(k.monos[0]), x);
        const BmuElement b = f.bmu.act(f.algebra.element(k.monos[1]), y);
        std::uint32_t s = c;
        if (r.p != 2 && x_odd && k.monos[1].odd(r.p))
            s = neg_mod(s, r.p);
        out.add_scaled(f.bmu.mul(a, b), k.coeff, s);
    }
    return out;
}

// lambda as a map (coefficient, class, omega) -> residue.
using LambdaMap = std::map<std::tuple<CoeffMonomial, BmuMonomial, std::uint32_t, std::array<std::uint16_t, 12>>,
                           std::uint32_t>;

LambdaMap as_map(const std::vector<LambdaTerm>& terms, std::uint32_t p)
{
    LambdaMap out;
    for (const auto& t : terms) {
        auto& slot = out[{t.coeff, t.m, t.omega.tau_mask, t.omega.xi}];
        slot = add_mod(slot, t.c, p);
        if (slot == 0)
            out.erase({t.coeff, t.m, t.omega.tau_mask, t.omega.xi});
    }
    return out;
}

}  // namespace

TEST_CASE("the relation for u^2")
{
    CHECK(to_string(Fixture(Ring::make(2)).x("u^2")) == "tau*v + rho*u");
    CHECK(to_string(Fixture(Ring::make(2, BaseMode::RhoZero)).x("u u")) == "tau*v");
    CHECK(to_string(Fixture(Ring::make(3)).x("u^2")) == "0");
    CHECK(to_string(Fixture(Ring::make(3)).x("2*u v^2 + v")) == "v + 2*u v^2");
}

TEST_CASE("actions of named operations")
{
    for (const Ring& ring : kRings) {
        // M_2 has first degree 2(p^2 - 1).
        Fixture f(ring, 32, std::max(40, int(2 * (ring.p * ring.p - 1))));
        const std::uint32_t p = ring.p;
        CHECK(f.act("Q0", "u") == "v");
        CHECK(f.bmu.act(f.algebra.q_op(1), f.bmu.v()) == f.bmu.element({0, p}));
        for (int k = 0; k <= 2; ++k)
            CHECK(f.bmu.act(f.algebra.m_class(k), f.bmu.v()) == f.bmu.element({0, std::uint32_t(ipow(p, k))}));
    }
    CHECK(Fixture(Ring::make(2)).act("Sq1", "u v") == "v^2");
    CHECK(Fixture(Ring::make(3)).act("P1", "v") == "v^3");
}

TEST_CASE("lambda on generators")
{
    Fixture f(Ring::make(2), 5);
    CHECK(as_map(f.bmu.lambda(f.x("1")), 2) ==
          LambdaMap{{{CoeffMonomial{}, BmuMonomial{0, 0}, 0u, std::array<std::uint16_t, 12>{}}, 1u}});
    LambdaMap expected;
    expected[{CoeffMonomial{}, BmuMonomial{1, 0}, 0u, {}}] = 1;
    for (int i = 0; i <= 2; ++i)
        expected[{CoeffMonomial{}, BmuMonomial{0, std::uint32_t(1u << i)}, 1u << i, {}}] = 1;
    CHECK(as_map(f.bmu.lambda(f.x("u")), 2) == expected);
}

TEST_CASE("lambda is multiplicative")
{
    for (const Ring& ring : kRings) {
        Fixture f(ring, 12);
        const std::uint32_t p = ring.p;
        for (const char* a : {"u", "v", "u v", "v^2"}) {
            for (const char* b : {"u", "v", "v^3"}) {
                const BmuElement x = f.x(a), y = f.x(b);
                // lambda(x) lambda(y) multiplied out term by term.
                LambdaMap product;
                for (const auto& s : f.bmu.lambda(x)) {
                    for (const auto& t : f.bmu.lambda(y)) {
                        if (s.m.v + t.m.v + (s.m.u & t.m.u) > f.bmu.truncation())
                            continue;
                        BmuElement m = f.bmu.mul(f.bmu.element(s.m), f.bmu.element(t.m));
                        std::uint32_t c = mul_mod(s.c, t.c, p);
                        if (p != 2 && s.omega.odd(p) && t.m.odd())
                            c = neg_mod(c, p);
                        for (const auto& w : f.dual.mul(s.omega, t.omega))
                            for (const auto& [k, cm] : m.terms()) {
                                if (k.second.v > f.bmu.truncation())
                                    continue;
                                auto& slot = product[{s.coeff * t.coeff * w.coeff * k.first, k.second,
                                                      w.mono.tau_mask, w.mono.xi}];
                                slot = add_mod(slot, mul_mod(mul_mod(c, w.c, p), cm, p), p);
                            }
                    }
                }
                std::erase_if(product, [](const auto& kv) { return kv.second == 0; });
                CHECK(as_map(f.bmu.lambda(f.bmu.mul(x, y)), p) == product);
            }
        }
    }
}

TEST_CASE("unit and composition")
{
    std::mt19937_64 rng(5);
    for (const Ring& ring : kRings) {
        Fixture f(ring, 40);
        const auto monos = f.dual.monomials_up_to(ring.p == 2 ? 10 : 20);
        for (const char* s : {"u", "v", "u v^2", "tau*v^3 + u"})
            CHECK(f.bmu.act(f.algebra.one(), f.x(s)) == f.x(s));
        for (int trial = 0; trial < 60; ++trial) {
            const OpElement a = f.algebra.element(monos[rng() % monos.size()]);
            const OpElement b = f.algebra.element(monos[rng() % monos.size()]);
            const BmuElement x = f.bmu.element({std::uint8_t(rng() % 2), std::uint32_t(rng() % 4)});
            CHECK(f.bmu.act(f.algebra.mul(a, b), x) == f.bmu.act(a, f.bmu.act(b, x)));
        }
    }
}

TEST_CASE("Cartan formula in action")
{
    for (const Ring& ring : kRings) {
        Fixture f(ring, 40);
        const auto monos = f.dual.monomials_up_to(ring.p == 2 ? 10 : 20);
        const std::vector<BmuMonomial> classes{{1, 0}, {0, 1}, {1, 1}, {0, 2}};
        for (const auto& m : monos) {
            const OpTensor psi = f.algebra.coproduct(f.algebra.element(m));
            for (const auto& a : classes)
                for (const auto& b : classes) {
                    const BmuElement x = f.bmu.element(a), y = f.bmu.element(b);
                    const BmuElement lhs = f.bmu.act(f.algebra.element(m), f.bmu.mul(x, y));
                    CHECK(lhs == cartan_act(f, psi, x, y, a.odd()));
                }
        }
    }
}

TEST_CASE("rottura examples")
{
    Fixture f2(Ring::make(2), 16), f3(Ring::make(3), 16);
    CHECK(f2.bmu.verify_rottura(f2.op("Q0"), 0).holds());
    CHECK(to_string(f2.bmu.verify_rottura(f2.op("Q0"), 0).lhs_u) == "v");
    CHECK(f3.bmu.verify_rottura(f3.op("P1"), 0).holds());
    for (unsigned n = 0; n <= 2; ++n) {
        const RotturaReport r = f3.bmu.verify_rottura(f3.algebra.one(), n);
        CHECK(r.holds());
        CHECK(r.lhs_u == f3.bmu.power(f3.bmu.u(), std::uint32_t(ipow(3, n))));
    }
    CHECK_THROWS_AS(f2.bmu.verify_rottura(f2.op("Q0"), 5), TruncationError);
}

TEST_CASE("truncation overflow is an error")
{
    Fixture f(Ring::make(2), 3);
    CHECK_THROWS_AS(f.bmu.mul(f.x("v^2"), f.x("v^2")), TruncationError);
    CHECK_THROWS_AS(f.bmu.act(f.algebra.q_op(2), f.x("v")), TruncationError);
    CHECK_NOTHROW(f.bmu.act(f.algebra.q_op(1), f.x("v^2")));
}

TEST_CASE("B mu_p suite on a small window")
{
    for (const Ring& ring : {Ring::make(2), Ring::make(2, BaseMode::RhoZero), Ring::make(3)}) {
        Fixture f(ring, 64);
        const SuiteResult r = bmu_suite(f.bmu, 16);
        INFO(r.name, ": ", r.first_failure);
        CHECK(r.passed());
    }
}
