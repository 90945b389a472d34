#include "motsteen/op_algebra.hpp"
#include "motsteen/parse.hpp"
#include "motsteen/verify.hpp"

#include <doctest.h>

#include <random>

using namespace motsteen;

namespace {

struct Fixture {
    explicit Fixture(Ring ring, int max_d = 40) : dual(ring), algebra(dual, max_d) {}
    DualSteenrod dual;
    MilnorAlgebra algebra;

    OpElement op(const char* s) const { return parse_op(s, algebra); }
    std::string mul(const char* a, const char* b) const { return to_string(algebra.mul(op(a), op(b))); }
    std::string coprod(const char* a) const { return to_string(algebra.coproduct(op(a))); }
};

const std::vector<Ring> kRings{Ring::make(2), Ring::make(2, BaseMode::RhoZero),
                               Ring::make(2, BaseMode::Char2TauZero), Ring::make(3), Ring::make(5)};

}  // namespace

TEST_CASE("pairing")
{
    Fixture f(Ring::make(2));
    auto pair = [&](const char* x, const char* th) {
        return to_string(f.algebra.pair(parse_dual(x, f.dual), f.op(th)));
    };
    CHECK(pair("t0", "Q0") == "1");
    CHECK(pair("x1", "Q0") == "0");
    CHECK(pair("tau*x1", "Q0") == "0");
    CHECK(pair("t1 x1", "Q1P1") == "1");
    CHECK(pair("t0 + x1", "P1") == "1");
}

TEST_CASE("named classes and bidegrees")
{
    Fixture f2(Ring::make(2)), f3(Ring::make(3));
    CHECK(f2.algebra.bidegree(f2.algebra.milnor_primitive(2)) == Bidegree{7, 3});
    CHECK(f3.algebra.bidegree(f3.algebra.milnor_primitive(1)) == Bidegree{5, 2});
    CHECK(f2.algebra.bidegree(f2.algebra.milnor_primitive(0)) == Bidegree{1, 0});
    CHECK(f3.algebra.bidegree(f3.algebra.reduced_power(1)) == Bidegree{4, 2});
    CHECK(f2.algebra.sq(1) == f2.algebra.bockstein());
    CHECK(f2.algebra.sq(2) == f2.algebra.reduced_power(1));
    CHECK(to_string(f2.algebra.sq(3)) == "Q0P1");
    CHECK(to_string(f2.algebra.m_class(2)) == to_string(f2.algebra.mul(f2.op("P2"), f2.op("P1"))));
    CHECK(to_string(f3.algebra.q_class({0, 2})) == "QE{0,2}");
    CHECK(to_string(f3.algebra.q_op(2)) == "P(0,1)");
}

TEST_CASE("products")
{
    Fixture f(Ring::make(2));
    CHECK(f.mul("Q0", "Q0") == "0");
    CHECK(f.mul("Sq1", "Sq2") == "Q0P1");
    // Known motivic Adem relations over F_2[tau, rho].
    CHECK(f.algebra.mul(f.op("Sq2"), f.op("Sq2")) == f.algebra.mul(f.op("tau*Sq3"), f.op("Sq1")));
    CHECK(f.algebra.mul(f.op("Sq2"), f.op("Sq3")) ==
          f.op("Sq5") + f.algebra.mul(f.op("Sq4"), f.op("Sq1")) + f.algebra.mul(f.op("rho*Sq3"), f.op("Sq1")));
    CHECK(f.algebra.mul(f.op("Sq4"), f.op("Sq4")) ==
          f.algebra.mul(f.op("Sq6"), f.op("Sq2")) + f.algebra.mul(f.op("tau*Sq7"), f.op("Sq1")));
    Fixture f3(Ring::make(3));
    CHECK(f3.mul("P1", "P1") == "2*P2");
    CHECK(f3.mul("P1", "P2") == "0");
    CHECK(f3.mul("Q0", "Q0") == "0");
    // Juxtaposition is composition.
    CHECK(f.op("Sq1 Sq2") == f.algebra.mul(f.op("Sq1"), f.op("Sq2")));
}

TEST_CASE("the unit is two-sided")
{
    std::mt19937_64 rng(3);
    for (const Ring& ring : kRings) {
        Fixture f(ring);
        const auto monos = f.dual.monomials_up_to(20);
        const OpElement one = f.algebra.one();
        for (int trial = 0; trial < 40; ++trial) {
            const OpElement th = f.algebra.element(monos[rng() % monos.size()]);
            CHECK(f.algebra.mul(one, th) == th);
            CHECK(f.algebra.mul(th, one) == th);
        }
    }
}

TEST_CASE("coproducts of primitives")
{
    CHECK(Fixture(Ring::make(3)).coprod("Q1") == "Q1(x)1 + 1(x)Q1");
    CHECK(Fixture(Ring::make(5), 60).coprod("Q2") == "Q2(x)1 + 1(x)Q2");
    CHECK(Fixture(Ring::make(2)).coprod("Q1") == "Q1(x)1 + 1(x)Q1 + rho*Q0(x)Q0");
    CHECK(Fixture(Ring::make(2)).coprod("1") == "1(x)1");
    CHECK(Fixture(Ring::make(2)).coprod("Sq1") == "Q0(x)1 + 1(x)Q0");
    CHECK(Fixture(Ring::make(2)).coprod("Sq2") == "P1(x)1 + 1(x)P1 + tau*Q0(x)Q0");
}

TEST_CASE("commutator with Q_0")
{
    for (const Ring& ring : kRings) {
        Fixture f(ring, ring.p == 2 ? 40 : 60);
        const OpElement b = f.algebra.bockstein();
        for (int t = 1; t <= (ring.p == 5 ? 2 : 3); ++t) {
            const OpElement qt = f.algebra.q_op(t);
            const OpElement comm = f.algebra.mul(b, qt) - f.algebra.mul(qt, b);
            const OpElement expected = f.algebra.milnor_primitive(t);
            // At odd p the bracket comes out as -Q_t.
            CHECK(comm == (ring.p == 2 ? expected : -expected));
        }
    }
}

TEST_CASE("psi^* dualizes the product of the dual algebra")
{
    for (const Ring& ring : kRings) {
        Fixture f(ring);
        const int max_d = ring.p == 2 ? 10 : 20;
        const auto monos = f.dual.monomials_up_to(max_d);
        for (const auto& k : monos) {
            const OpTensor& psi = f.algebra.coproduct_basis(k);
            const OpElement th = f.algebra.element(k);
            for (const auto& x : monos)
                for (const auto& y : monos) {
                    if (x.bidegree(ring.p).d + y.bidegree(ring.p).d > k.bidegree(ring.p).d)
                        continue;
                    const Coeff lhs = f.algebra.pair(f.dual.mul(f.dual.element(x), f.dual.element(y)), th);
                    CHECK(lhs == f.algebra.pair_tensor(x, y, psi));
                }
        }
    }
}

TEST_CASE("window errors")
{
    Fixture f(Ring::make(2), 10);
    CHECK_THROWS_AS(f.algebra.mul(f.op("P4"), f.op("P4")), WindowError);
    CHECK_THROWS_AS(f.algebra.coproduct(f.algebra.element(DualMonomial::xi_power(2, 2))), WindowError);
}

TEST_CASE("operation suites on small windows")
{
    for (const Ring& ring : kRings) {
        const int max_square = ring.p == 2 ? 3 : ring.p == 3 ? 4 : 2;
        Fixture f(ring, std::max(40, 2 * tau_degree(ring.p, max_square).d));
        for (const SuiteResult& r : {duality_suite(f.algebra, ring.p == 2 ? 16 : 30),
                                     psi_multiplicative_suite(f.algebra, ring.p == 2 ? 10 : 20),
                                     q_suite(f.algebra, max_square, std::min(max_square, 3)),
                                     cartan_suite(f.algebra, ring.p == 5 ? 4 : 8)}) {
            INFO(r.name, ": ", r.first_failure);
            // psi^* stops being an algebra map, and op_mul associative, when tau = 0 at p = 2.
            if (ring.mode == BaseMode::Char2TauZero && (r.name.starts_with("psi") || r.name.starts_with("duality")))
                CHECK_FALSE(r.passed());
            else
                CHECK(r.passed());
        }
    }
}

TEST_CASE("psi^* is not an algebra map in characteristic 2 with tau = 0")
{
    Fixture f(Ring::make(2, BaseMode::Char2TauZero));
    CHECK_FALSE(psi_multiplicative_suite(f.algebra, 10).passed());
}
