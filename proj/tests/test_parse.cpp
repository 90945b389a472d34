#include "motsteen/parse.hpp"

#include <doctest.h>

#include <random>

using namespace motsteen;

namespace {

constexpr int kSamples = 1000;

const std::vector<Ring> kRings{Ring::make(2), Ring::make(2, BaseMode::RhoZero), Ring::make(3), Ring::make(5)};

CoeffMonomial random_coeff_mono(const Ring& ring, std::mt19937_64& rng)
{
    CoeffMonomial m{std::uint32_t(rng() % 4), std::uint32_t(rng() % 4)};
    if (!ring.keeps_tau())
        m.tau = 0;
    if (!ring.keeps_rho())
        m.rho = 0;
    return m;
}

std::uint32_t random_residue(const Ring& ring, std::mt19937_64& rng) { return std::uint32_t(1 + rng() % (ring.p - 1)); }

}  // namespace

TEST_CASE("print and parse are inverse on coefficients")
{
    std::mt19937_64 rng(21);
    for (const Ring& ring : kRings) {
        for (int k = 0; k < kSamples; ++k) {
            Coeff c(ring);
            const int terms = int(rng() % 4);
            for (int i = 0; i < terms; ++i)
                c.add_term(random_coeff_mono(ring, rng), random_residue(ring, rng));
            const std::string text = to_string(c);
            const Coeff back = parse_coeff(text, ring);
            CHECK(back == c);
            CHECK(to_string(back) == text);
        }
    }
}

TEST_CASE("print and parse are inverse on dual elements")
{
    std::mt19937_64 rng(22);
    for (const Ring& ring : kRings) {
        DualSteenrod dual(ring);
        const auto monos = dual.monomials_up_to(ring.p == 2 ? 24 : 60);
        for (int k = 0; k < kSamples; ++k) {
            DualElement x(ring);
            const int terms = int(rng() % 4);
            for (int i = 0; i < terms; ++i)
                x.add(random_coeff_mono(ring, rng), {monos[rng() % monos.size()]}, random_residue(ring, rng));
            const std::string text = to_string(x);
            const DualElement back = parse_dual(text, dual);
            CHECK(back == x);
            CHECK(to_string(back) == text);
        }
    }
}

TEST_CASE("print and parse are inverse on operations")
{
    std::mt19937_64 rng(23);
    for (const Ring& ring : kRings) {
        DualSteenrod dual(ring);
        MilnorAlgebra algebra(dual, 60);
        const auto monos = dual.monomials_up_to(ring.p == 2 ? 24 : 60);
        for (int k = 0; k < kSamples; ++k) {
            OpElement th(ring);
            const int terms = int(rng() % 4);
            for (int i = 0; i < terms; ++i)
                th.add(random_coeff_mono(ring, rng), {monos[rng() % monos.size()]}, random_residue(ring, rng));
            const std::string text = to_string(th);
            const OpElement back = parse_op(text, algebra);
            CHECK(back == th);
            CHECK(to_string(back) == text);
        }
    }
}

TEST_CASE("print and parse are inverse on B mu_p classes")
{
    std::mt19937_64 rng(24);
    for (const Ring& ring : kRings) {
        DualSteenrod dual(ring);
        MilnorAlgebra algebra(dual, 10);
        BmuComodule bmu(algebra, 12);
        for (int k = 0; k < kSamples; ++k) {
            BmuElement x(ring);
            const int terms = int(rng() % 4);
            for (int i = 0; i < terms; ++i)
                x.add(random_coeff_mono(ring, rng), {std::uint8_t(rng() % 2), std::uint32_t(rng() % 13)},
                      random_residue(ring, rng));
            const std::string text = to_string(x);
            const BmuElement back = parse_bmu(text, bmu);
            CHECK(back == x);
            CHECK(to_string(back) == text);
        }
    }
}

TEST_CASE("grammar examples")
{
    DualSteenrod dual(Ring::make(2));
    MilnorAlgebra algebra(dual, 40);
    BmuComodule bmu(algebra, 8);
    const DualElement x = parse_dual("rho^2*t0 x1^3", dual);
    CHECK(x.size() == 1);
    CHECK(to_string(x) == "rho^2*t0 x1^3");
    CHECK(parse_op("Q0 q2", algebra) == algebra.mul(algebra.bockstein(), algebra.q_op(2)));
    CHECK(to_string(parse_bmu("u^2", bmu)) == "tau*v + rho*u");
    CHECK(to_string(parse_dual("t0 - t0", dual)) == "0");
    CHECK(to_string(parse_op("Sq3 + b P1", algebra)) == "0");
    CHECK(to_string(parse_op("M1", algebra)) == "P1");
}

TEST_CASE("syntax errors carry the offset and the expected tokens")
{
    DualSteenrod dual(Ring::make(3));
    try {
        parse_dual("t0 + y1", dual);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        CHECK(std::find(e.expected().begin(), e.expected().end(), "t<i>") != e.expected().end());
    }
    CHECK_THROWS_AS(parse_dual("", dual), ParseError);
    CHECK_THROWS_AS(parse_dual("t0 +", dual), ParseError);
    CHECK_THROWS_AS(parse_dual("t99", dual), ParseError);
    CHECK_THROWS_AS(parse_coeff("tau^", Ring::make(3)), ParseError);
    MilnorAlgebra algebra(dual, 20);
    CHECK_THROWS_AS(parse_op("QE{0,0}", algebra), ParseError);
    CHECK_THROWS_AS(parse_op("P(1,2", algebra), ParseError);
}
