#include "motsteen/coeff.hpp"
#include "motsteen/parse.hpp"

#include <doctest.h>

#include <random>

using namespace motsteen;

namespace {

Coeff random_coeff(Ring ring, std::mt19937_64& rng, int terms = 3)
{
    Coeff c(ring);
    std::uniform_int_distribution<std::uint32_t> e(0, 3), r(0, ring.p - 1);
    for (int i = 0; i < terms; ++i)
        c.add_term({e(rng), e(rng)}, r(rng));
    return c;
}

}  // namespace

TEST_CASE("ring construction validates the prime")
{
    CHECK_NOTHROW(Ring::make(2));
    CHECK_NOTHROW(Ring::make(65521));
    CHECK_THROWS_AS(Ring::make(1), ContractError);
    CHECK_THROWS_AS(Ring::make(9), ContractError);
    CHECK(parse_base_mode("rho0") == BaseMode::RhoZero);
    CHECK(parse_base_mode("char2") == BaseMode::Char2TauZero);
    CHECK_FALSE(parse_base_mode("weird").has_value());
}

TEST_CASE("coefficient bidegrees")
{
    const Ring r = Ring::make(2);
    CHECK(Coeff::tau(r).bidegree() == Bidegree{0, 1});
    CHECK(Coeff::rho(r).bidegree() == Bidegree{1, 1});
    CHECK(Coeff::monomial(r, 1, {2, 3}).bidegree() == Bidegree{3, 5});
    CHECK_FALSE((Coeff::tau(r) + Coeff::rho(r)).bidegree().has_value());
    CHECK_FALSE(Coeff::zero(r).bidegree().has_value());
}

TEST_CASE("canonical printing")
{
    const Ring r = Ring::make(5);
    CHECK(format_coeff_term(3, {2, 1}) == "3*tau^2*rho");
    CHECK(format_coeff_term(1, {1, 0}) == "tau");
    CHECK(format_coeff_term(1, {}) == "1");
    CHECK(to_string(Coeff::zero(r)) == "0");
    CHECK(to_string(Coeff::constant(r, -1)) == "4");
    CHECK(to_string(Coeff::tau(r) + Coeff::rho(r)) == "tau + rho");
}

TEST_CASE("base modes kill tau or rho")
{
    const Ring rho0 = Ring::make(2, BaseMode::RhoZero);
    const Ring char2 = Ring::make(2, BaseMode::Char2TauZero);
    CHECK(Coeff::rho(rho0).is_zero());
    CHECK_FALSE(Coeff::tau(rho0).is_zero());
    CHECK(Coeff::tau(char2).is_zero());
    CHECK(to_string(parse_coeff("tau + rho", rho0)) == "tau");
}

TEST_CASE("ring axioms on random coefficients")
{
    std::mt19937_64 rng(7);
    for (std::uint32_t p : {2u, 3u, 7u}) {
        const Ring r = Ring::make(p);
        for (int trial = 0; trial < 200; ++trial) {
            const Coeff a = random_coeff(r, rng), b = random_coeff(r, rng), c = random_coeff(r, rng);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - a == Coeff::zero(r));
            CHECK(a * Coeff::one(r) == a);
            if (!b.is_zero())
                CHECK(divide_exact(a * b, b) == a);
        }
    }
}

TEST_CASE("exact division rejects non-divisors")
{
    const Ring r = Ring::make(3);
    CHECK_THROWS_AS(divide_exact(Coeff::tau(r), Coeff::rho(r)), Error);
    CHECK_THROWS_AS(divide_exact(Coeff::tau(r), Coeff::zero(r)), Error);
}

TEST_CASE("residue helpers")
{
    for (std::uint32_t p : {2u, 3u, 5u, 65521u})
        for (std::uint32_t a = 1; a < std::min(p, 200u); ++a)
            CHECK(mul_mod(a, inv_mod(a, p), p) == 1);
    CHECK(reduce_mod(-7, 5) == 3);
    CHECK(Coeff::constant(Ring::make(3), 5).evaluate(0, 0) == 2);
    CHECK(parse_coeff("tau^2 + 2*rho", Ring::make(3)).evaluate(2, 1) == 0);
}
