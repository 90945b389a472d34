#include "motsteen/verify.hpp"

#include <chrono>
#include <tuple>
#include <unordered_map>

namespace motsteen {

namespace {

class Stopwatch {
public:
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::vector<DualMonomial>> monomials_by_degree(const DualSteenrod& dual, int max_d)
{
    std::vector<std::vector<DualMonomial>> out(std::size_t(std::max(max_d, 0)) + 1);
    for (const auto& m : dual.monomials_up_to(max_d))
        out[std::size_t(dual.degree(m).d)].push_back(m);
    return out;
}

std::string mono_text(const DualMonomial& m) { return format_dual_monomial(m); }
std::string op_text(const DualMonomial& m) { return format_op_basis(m); }

std::string mode_label(const Ring& r) { return "p=" + std::to_string(r.p) + " " + std::string(to_string(r.mode)); }

}  // namespace

bool SuiteResult::check(bool ok, const std::function<std::string()>& what)
{
    ++checks;
    if (!ok) {
        if (failures == 0)
            first_failure = what();
        ++failures;
    }
    return ok;
}

void SuiteResult::merge(const SuiteResult& other)
{
    checks += other.checks;
    if (failures == 0 && other.failures != 0)
        first_failure = other.first_failure;
    failures += other.failures;
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    elapsed_ms += other.elapsed_ms;
}

SuiteResult relation_suite(const DualSteenrod& dual, int max_i)
{
    Stopwatch clock;
    SuiteResult out("relations (" + mode_label(dual.ring()) + ")");
    const Ring& r = dual.ring();
    for (int i = 0; i <= max_i; ++i) {
        const DualElement t = dual.element(DualMonomial::tau(i));
        const DualElement square = dual.mul(t, t);
        DualElement expected(r);
        if (r.p == 2) {
            DualMonomial t0x = DualMonomial::xi_power(i + 1, 1);
            t0x.tau_mask |= 1u;
            expected.add(CoeffMonomial{1, 0}, {DualMonomial::xi_power(i + 1, 1)}, 1);
            expected.add(CoeffMonomial{0, 1}, {DualMonomial::tau(i + 1)}, 1);
            expected.add(CoeffMonomial{0, 1}, {t0x}, 1);
        }
        out.check(square == expected, [&] {
            return "t" + std::to_string(i) + "^2 = " + to_string(square) + ", expected " + to_string(expected);
        });
    }
    out.elapsed_ms = clock.ms();
    return out;
}

SuiteResult hopf_suite(const DualSteenrod& dual, int max_d, SuiteOptions options)
{
    Stopwatch clock;
    SuiteResult out("hopf (" + mode_label(dual.ring()) + ", d<=" + std::to_string(max_d) + ")");
    const std::uint32_t p = dual.prime();
    const auto levels = monomials_by_degree(dual, max_d);
    auto stop = [&] { return options.stop_at_first_failure && out.failures > 0; };

    std::vector<DualMonomial> all;
    for (const auto& level : levels)
        all.insert(all.end(), level.begin(), level.end());
    std::unordered_map<DualMonomial, std::size_t, DualMonomialHash> index;
    std::vector<DualElement> elems;
    for (std::size_t k = 0; k < all.size(); ++k) {
        index.emplace(all[k], k);
        elems.push_back(dual.element(all[k]));
    }

    // Counit and coassociativity on every monomial.
    for (const auto& m : all) {
        const DualTensor& phi = dual.coproduct(m);
        out.check(dual.counit_left(phi) == elems[index[m]] && dual.counit_right(phi) == elems[index[m]],
                  [&] { return "counit fails on " + mono_text(m) + ": phi = " + to_string(phi); });
        const DualTensor3 left = dual.coproduct_left(phi), right = dual.coproduct_right(phi);
        out.check(left == right, [&] {
            return "coassociativity fails on " + mono_text(m) + ": (phi x id)phi = " + to_string(left) +
                   ", (id x phi)phi = " + to_string(right);
        });
        if (stop())
            break;
    }

    // Pairs: products are cached for the triple loop below.
    std::unordered_map<std::uint64_t, DualElement> products;
    const std::uint64_t n = all.size();
    for (std::size_t a = 0; a < all.size() && !stop(); ++a) {
        const int da = dual.degree(all[a]).d;
        for (std::size_t b = 0; b < all.size() && !stop(); ++b) {
            if (da + dual.degree(all[b]).d > max_d)
                continue;
            const DualElement ab = dual.mul(elems[a], elems[b]);
            const DualElement ba = dual.mul(elems[b], elems[a]);
            const bool sign = p != 2 && all[a].odd(p) && all[b].odd(p);
            out.check(ab == (sign ? -ba : ba), [&] {
                return "graded commutativity fails on " + mono_text(all[a]) + ", " + mono_text(all[b]) + ": " +
                       to_string(ab) + " vs " + to_string(ba);
            });
            const DualTensor lhs = dual.coproduct(ab);
            const DualTensor rhs = dual.tensor_mul(dual.coproduct(all[a]), dual.coproduct(all[b]));
            out.check(lhs == rhs, [&] {
                return "phi_* is not multiplicative on " + mono_text(all[a]) + " * " + mono_text(all[b]) +
                       ": phi(ab) = " + to_string(lhs) + ", phi(a)phi(b) = " + to_string(rhs);
            });
            products.emplace(a * n + b, std::move(ab));
        }
    }

    for (std::size_t a = 0; a < all.size() && !stop(); ++a) {
        const int da = dual.degree(all[a]).d;
        for (std::size_t b = 0; b < all.size() && !stop(); ++b) {
            const int db = dual.degree(all[b]).d;
            if (da + db > max_d)
                continue;
            const DualElement& ab = products.at(a * n + b);
            for (std::size_t c = 0; c < all.size(); ++c) {
                if (da + db + dual.degree(all[c]).d > max_d)
                    continue;
                const DualElement lhs = dual.mul(ab, elems[c]);
                const DualElement rhs = dual.mul(elems[a], products.at(b * n + c));
                if (!out.check(lhs == rhs, [&] {
                        return "associativity fails on (" + mono_text(all[a]) + ")(" + mono_text(all[b]) + ")(" +
                               mono_text(all[c]) + "): " + to_string(lhs) + " vs " + to_string(rhs);
                    }) &&
                    stop())
                    break;
            }
        }
    }
    out.elapsed_ms = clock.ms();
    return out;
}

SuiteResult duality_suite(const MilnorAlgebra& algebra, int max_d)
{
    Stopwatch clock;
    const DualSteenrod& dual = algebra.dual();
    SuiteResult out("duality (" + mode_label(dual.ring()) + ", d<=" + std::to_string(max_d) + ")");
    const Ring& r = dual.ring();
    const std::uint32_t p = r.p;

    std::map<Bidegree, std::vector<DualMonomial>> by_bidegree;
    for (const auto& m : dual.monomials_up_to(max_d))
        by_bidegree[dual.degree(m)].push_back(m);
    for (const auto& [bd, ms] : by_bidegree) {
        bool identity = true;
        std::string bad;
        for (const auto& x : ms)
            for (const auto& y : ms) {
                const Coeff c = algebra.pair(dual.element(x), algebra.element(y));
                const bool ok = x == y ? c.is_one() : c.is_zero();
                if (!ok && identity) {
                    identity = false;
                    bad = "<" + mono_text(x) + ", " + op_text(y) + "> = " + to_string(c);
                }
            }
        out.check(identity, [&] { return "pairing matrix in bidegree " + to_string(bd) + " is not the identity: " + bad; });
    }

    std::vector<DualMonomial> all;
    for (const auto& [bd, ms] : by_bidegree)
        all.insert(all.end(), ms.begin(), ms.end());
    const OpElement one = algebra.one();
    std::vector<OpElement> elems;
    for (const auto& m : all) {
        elems.push_back(algebra.element(m));
        const OpElement left = algebra.mul(one, elems.back()), right = algebra.mul(elems.back(), one);
        out.check(left == elems.back() && right == elems.back(), [&] {
            return "P^0 is not a unit on " + op_text(m) + ": " + to_string(left) + ", " + to_string(right);
        });
    }

    for (std::size_t a = 0; a < all.size(); ++a) {
        const int da = all[a].bidegree(p).d;
        for (std::size_t b = 0; b < all.size(); ++b) {
            const int db = all[b].bidegree(p).d;
            if (da + db > max_d)
                continue;
            const OpElement& ab = algebra.mul_basis(all[a], all[b]);
            for (std::size_t c = 0; c < all.size(); ++c) {
                if (da + db + all[c].bidegree(p).d > max_d)
                    continue;
                const OpElement lhs = algebra.mul(ab, elems[c]);
                const OpElement rhs = algebra.mul(elems[a], algebra.mul_basis(all[b], all[c]));
                out.check(lhs == rhs, [&] {
                    return "op_mul associativity fails on (" + op_text(all[a]) + ")(" + op_text(all[b]) + ")(" +
                           op_text(all[c]) + "): " + to_string(lhs) + " vs " + to_string(rhs);
                });
            }
        }
    }
    out.elapsed_ms = clock.ms();
    return out;
}

SuiteResult psi_multiplicative_suite(const MilnorAlgebra& algebra, int max_d)
{
    Stopwatch clock;
    const DualSteenrod& dual = algebra.dual();
    const Ring& r = dual.ring();
    SuiteResult out("psi^* (" + mode_label(r) + ", d<=" + std::to_string(max_d) + ")");
    const std::uint32_t p = r.p;
    const auto all = dual.monomials_up_to(max_d);
    const OpElement tau = algebra.element(DualMonomial::one(), Coeff::tau(r));
    for (const auto& a : all) {
        // psi^*(a) lies in the part of A (x) A where tau may sit in either factor.
        OpTensor left(r), right(r);
        for (const auto& [k, c] : algebra.coproduct_basis(a).terms()) {
            const OpElement x = algebra.element(k.monos[0]), y = algebra.element(k.monos[1]);
            left.add_scaled(algebra.outer(algebra.mul(x, tau), y), k.coeff, c);
            right.add_scaled(algebra.outer(x, algebra.mul(y, tau)), k.coeff, c);
        }
        out.check(left == right, [&] {
            return "psi^*(" + op_text(a) + ") is not balanced over tau: " + to_string(left) + " vs " + to_string(right);
        });
    }
    for (const auto& a : all)
        for (const auto& b : all) {
            if (a.bidegree(p).d + b.bidegree(p).d > max_d)
                continue;
            const OpTensor lhs = algebra.coproduct(algebra.mul_basis(a, b));
            const OpTensor rhs = algebra.tensor_mul(algebra.coproduct_basis(a), algebra.coproduct_basis(b));
            out.check(lhs == rhs, [&] {
                return "psi^*(" + op_text(a) + " " + op_text(b) + ") = " + to_string(lhs) +
                       ", psi^*(a) psi^*(b) = " + to_string(rhs);
            });
        }
    out.elapsed_ms = clock.ms();
    return out;
}

SuiteResult q_suite(const MilnorAlgebra& algebra, int max_square, int max_t)
{
    Stopwatch clock;
    const Ring& r = algebra.ring();
    SuiteResult out("Q_t (" + mode_label(r) + ")");
    for (int t = 0; t <= max_square; ++t) {
        const OpElement q = algebra.milnor_primitive(t);
        const OpElement square = algebra.mul(q, q);
        out.check(square.is_zero(), [&] { return "Q" + std::to_string(t) + "^2 = " + to_string(square); });
    }
    for (int t = 0; t <= max_t; ++t) {
        const OpTensor psi = algebra.coproduct(algebra.milnor_primitive(t));
        const OpTensor closed = algebra.primitive_coproduct_closed_form(t);
        out.check(psi == closed, [&] {
            return "psi^*(Q" + std::to_string(t) + ") = " + to_string(psi) + ", closed form " + to_string(closed);
        });
    }
    const OpElement q0 = algebra.bockstein();
    for (int t = 1; t <= max_t; ++t) {
        const OpElement qt = algebra.q_op(t);
        const OpElement commutator = algebra.mul(q0, qt) - algebra.mul(qt, q0);
        const OpElement target = algebra.milnor_primitive(t);
        if (r.p == 2) {
            out.check(commutator == target, [&] {
                return "Q0 q" + std::to_string(t) + " - q" + std::to_string(t) + " Q0 = " + to_string(commutator) +
                       ", expected Q" + std::to_string(t);
            });
        }
        else {
            // With phi_*(tau_t) = tau_t (x) 1 + sum xi_{t-i}^{p^i} (x) tau_i the odd-prime
            // commutator is Milnor's [q_t, Q_0] = Q_t, the negative of the p = 2 reading.
            out.check(commutator == -target, [&] {
                return "Q0 q" + std::to_string(t) + " - q" + std::to_string(t) + " Q0 = " + to_string(commutator) +
                       ", expected -Q" + std::to_string(t);
            });
        }
    }
    if (r.p != 2)
        out.notes.push_back("at odd p, Q0 q_t - q_t Q0 = -Q_t (t <= " + std::to_string(max_t) + ")");
    out.elapsed_ms = clock.ms();
    return out;
}

SuiteResult cartan_suite(const MilnorAlgebra& algebra, std::uint32_t max_i)
{
    Stopwatch clock;
    const Ring& r = algebra.ring();
    SuiteResult out("cartan (" + mode_label(r) + ", i<=" + std::to_string(max_i) + ")");
    auto compare = [&](const std::string& label, const OpElement& th, std::uint32_t i, CartanKind kind) {
        const OpTensor psi = algebra.coproduct(th);
        const OpTensor closed = algebra.cartan_closed_form(i, kind);
        out.check(psi == closed, [&] {
            return "psi^*(" + label + ") = " + to_string(psi) + ", closed form " + to_string(closed);
        });
    };
    compare("b", algebra.bockstein(), 0, CartanKind::Beta);
    for (std::uint32_t i = 0; i <= max_i; ++i) {
        if (r.p == 2) {
            compare("Sq" + std::to_string(2 * i), algebra.sq(2 * i), i, CartanKind::SqEven);
            compare("Sq" + std::to_string(2 * i + 1), algebra.sq(2 * i + 1), i, CartanKind::SqOdd);
        }
        else {
            compare("P" + std::to_string(i), algebra.reduced_power(i), i, CartanKind::P);
        }
    }
    out.elapsed_ms = clock.ms();
    return out;
}

SuiteResult bmu_suite(const BmuComodule& bmu, int max_d, std::uint32_t max_pn)
{
    Stopwatch clock;
    const MilnorAlgebra& algebra = bmu.algebra();
    const Ring& r = algebra.ring();
    const std::uint32_t p = r.p;
    SuiteResult out{"bmu (" + mode_label(r) + ", d<=" + std::to_string(max_d) + ", N=" +
                    std::to_string(bmu.truncation()) + ")"};
    for (const auto& m : algebra.dual().monomials_up_to(max_d)) {
        for (unsigned n = 0; ipow(p, n) <= max_pn; ++n) {
            const RotturaReport rep = bmu.verify_rottura(algebra.element(m), n);
            out.check(rep.holds(), [&] {
                return "rottura fails for " + op_text(m) + ", n=" + std::to_string(n) + ": " + to_string(rep.lhs_u) +
                       " vs " + to_string(rep.rhs_u) + "; " + to_string(rep.lhs_v) + " vs " + to_string(rep.rhs_v);
            });
        }
    }
    const BmuElement qu = bmu.act(algebra.bockstein(), bmu.u());
    out.check(qu == bmu.v(), [&] { return "Q0(u) = " + to_string(qu); });
    for (int k = 0; k <= 2; ++k) {
        const BmuElement expected = bmu.element({0, std::uint32_t(ipow(p, unsigned(k)))});
        const OpElement mk = algebra.m_class(k);
        const BmuElement mv = bmu.act(mk, bmu.v());
        out.check(mv == expected, [&] { return "M" + std::to_string(k) + "(v) = " + to_string(mv); });
        const BmuElement mbu = bmu.act(algebra.mul(mk, algebra.bockstein()), bmu.u());
        out.check(mbu == expected, [&] { return "M" + std::to_string(k) + " b(u) = " + to_string(mbu); });
        if (k >= 1) {
            const BmuElement qv = bmu.act(algebra.q_op(k), bmu.v());
            out.check(qv == expected, [&] { return "q" + std::to_string(k) + "(v) = " + to_string(qv); });
        }
    }
    out.elapsed_ms = clock.ms();
    return out;
}

ModulePresentation build_module(Ring ring, int t, const ModuleShape& shape, std::mt19937_64* rng)
{
    const Bidegree qd = tau_degree(ring.p, t);
    ModulePresentation m{ring, {}, {}};
    std::vector<std::tuple<std::size_t, std::size_t, Coeff>> edges;
    for (std::size_t k = 0; k < shape.free_generators.size(); ++k) {
        const Bidegree b = shape.free_generators[k];
        m.basis.push_back({"g" + std::to_string(k), b, false});
        m.basis.push_back({"Qg" + std::to_string(k), b + qd, false});
        edges.emplace_back(m.basis.size() - 1, m.basis.size() - 2, Coeff::one(ring));
    }
    for (std::size_t k = 0; k < shape.trivial.size(); ++k)
        m.basis.push_back({"x" + std::to_string(k), shape.trivial[k], false});
    for (std::size_t k = 0; k < shape.torsion.size(); ++k) {
        const auto& [b, c] = shape.torsion[k];
        if (!admits(ring, c))
            throw ContractError("torsion coefficient " + format_coeff_term(1, c) + " is zero in this ring");
        m.basis.push_back({"h" + std::to_string(k), b, false});
        m.basis.push_back({"y" + std::to_string(k), b + qd - c.bidegree(), false});
        edges.emplace_back(m.basis.size() - 1, m.basis.size() - 2, Coeff::monomial(ring, 1, c));
    }
    const std::size_t n = m.basis.size();
    CoeffMatrix d(ring, n, n);
    for (const auto& [i, j, c] : edges)
        d.at(i, j) = c;

    if (rng) {
        // Homogeneous unitriangular P; the new basis is f_j = sum_i P(i, j) e_i.
        CoeffMatrix change(ring, n, n), inverse(ring, n, n);
        std::uniform_int_distribution<std::uint32_t> residue(1, ring.p - 1);
        for (std::size_t j = 0; j < n; ++j) {
            change.at(j, j) = Coeff::one(ring);
            for (std::size_t i = 0; i < j; ++i) {
                const Bidegree diff = m.basis[j].bidegree - m.basis[i].bidegree;
                const int a = diff.w - diff.d, b = diff.d;
                if (a < 0 || b < 0 || (*rng)() % 2 == 0)
                    continue;
                const CoeffMonomial c{std::uint32_t(a), std::uint32_t(b)};
                if (admits(ring, c))
                    change.at(i, j) = Coeff::monomial(ring, residue(*rng), c);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            inverse.at(i, i) = Coeff::one(ring);
            for (std::size_t j = i + 1; j < n; ++j) {
                Coeff s(ring);
                for (std::size_t k = i; k < j; ++k)
                    s = s + inverse.at(i, k) * change.at(k, j);
                inverse.at(i, j) = -s;
            }
        }
        d = inverse * (d * change);
    }
    m.actions.emplace(t, std::move(d));
    validate_module(m);
    return m;
}

ModuleShape random_shape(Ring ring, std::mt19937_64& rng, int max_pieces)
{
    std::uniform_int_distribution<int> pieces(1, std::max(1, max_pieces)), kind(0, 2), deg(0, 5), wt(0, 3),
        exp(0, 2);
    ModuleShape shape;
    const int count = pieces(rng);
    for (int k = 0; k < count; ++k) {
        const Bidegree b{deg(rng), wt(rng)};
        switch (kind(rng)) {
        case 0:
            shape.free_generators.push_back(b);
            break;
        case 1:
            shape.trivial.push_back(b);
            break;
        default: {
            CoeffMonomial c{std::uint32_t(exp(rng)), std::uint32_t(exp(rng))};
            if (!ring.keeps_tau())
                c.tau = 0;
            if (!ring.keeps_rho())
                c.rho = 0;
            if (c.is_one())
                shape.free_generators.push_back(b);
            else
                shape.torsion.emplace_back(b, c);
        }
        }
    }
    return shape;
}

SuiteResult margolis_suite(Ring ring, int pairs, std::uint64_t seed)
{
    Stopwatch clock;
    SuiteResult out("margolis (" + mode_label(ring) + ")");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(0, 6), wt(0, 4), pick_t(0, 2);
    const std::pair<std::uint32_t, std::uint32_t> unit_point{1, 1};

    for (int rank = 1; rank <= 4; ++rank) {
        for (int trial = 0; trial < 8; ++trial) {
            const int t = pick_t(rng);
            ModuleShape shape;
            for (int k = 0; k < rank; ++k)
                shape.free_generators.push_back({deg(rng), wt(rng)});
            const ModulePresentation m = build_module(ring, t, shape, &rng);
            for (const auto& spec : {std::optional<std::pair<std::uint32_t, std::uint32_t>>{}, std::optional{unit_point}}) {
                const HomologyReport rep = margolis_homology(m, t, spec);
                for (const auto& e : rep.entries) {
                    if (e.boundary)
                        continue;
                    out.check(e.homology == 0, [&] {
                        return "free E(Q" + std::to_string(t) + ") module of rank " + std::to_string(rank) +
                               " has HM of dimension " + std::to_string(e.homology) + " at " + to_string(e.bidegree) +
                               (spec ? " (specialized)" : "") + ": " + module_to_json(m);
                    });
                }
            }
        }
    }

    for (int rank = 1; rank <= 4; ++rank) {
        const int t = pick_t(rng);
        ModuleShape shape;
        for (int k = 0; k < rank; ++k)
            shape.trivial.push_back({deg(rng), wt(rng)});
        const ModulePresentation m = build_module(ring, t, shape, &rng);
        const HomologyReport rep = margolis_homology(m, t);
        bool equal = rep.total_homology(true) == m.basis.size();
        for (const auto& e : rep.entries)
            equal = equal && e.homology == e.dimension;
        out.check(equal, [&] { return "trivial module with HM != M: " + module_to_json(m); });
    }

    for (int k = 0; k < pairs; ++k) {
        const int t = pick_t(rng);
        const ModulePresentation a = build_module(ring, t, random_shape(ring, rng), &rng);
        const ModulePresentation b = build_module(ring, t, random_shape(ring, rng), &rng);
        const ModulePresentation sum = direct_sum(a, b);
        for (const auto& spec : {std::optional<std::pair<std::uint32_t, std::uint32_t>>{}, std::optional{unit_point}}) {
            const std::size_t ha = margolis_homology(a, t, spec).total_homology(true);
            const std::size_t hb = margolis_homology(b, t, spec).total_homology(true);
            const std::size_t hs = margolis_homology(sum, t, spec).total_homology(true);
            out.check(hs == ha + hb, [&] {
                return "HM(A + B) has dimension " + std::to_string(hs) + ", HM(A) + HM(B) = " + std::to_string(ha) +
                       " + " + std::to_string(hb) + (spec ? " (specialized)" : "") + "; A = " + module_to_json(a) +
                       ", B = " + module_to_json(b);
            });
        }
    }

    // Q_t^2 != 0 and inhomogeneous entries must be rejected when loading.
    const Bidegree qd = tau_degree(ring.p, 1);
    auto bd = [](Bidegree b) { return "[" + std::to_string(b.d) + "," + std::to_string(b.w) + "]"; };
    const std::string prefix = "{\"prime\":" + std::to_string(ring.p) + ",\"mode\":\"" + std::string(to_string(ring.mode)) + "\",";
    const std::string chain = prefix + "\"basis\":[{\"name\":\"x\",\"bidegree\":[0,0]},{\"name\":\"y\",\"bidegree\":" +
                              bd(qd) + "},{\"name\":\"z\",\"bidegree\":" + bd(2 * qd) +
                              "}],\"actions\":{\"1\":[[\"0\",\"0\",\"0\"],[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"0\"]]}}";
    const std::string skew = prefix + "\"basis\":[{\"name\":\"x\",\"bidegree\":[0,0]},{\"name\":\"y\",\"bidegree\":[0,0]}]," +
                             "\"actions\":{\"1\":[[\"0\",\"0\"],[\"1\",\"0\"]]}}";
    for (const auto& [label, text, needle] : {std::tuple{"Q_t^2 != 0", chain, std::string("^2")},
                                              std::tuple{"inhomogeneous", skew, std::string("inhomogeneous")}}) {
        std::string message;
        try {
            (void)load_module_text(text);
        }
        catch (const ModuleError& e) {
            message = e.what();
        }
        out.check(message.find(needle) != std::string::npos,
                  [&] { return std::string(label) + " module was not rejected: " + text; });
    }
    out.elapsed_ms = clock.ms();
    return out;
}

SuiteResult crossing_suite(int max_d)
{
    Stopwatch clock;
    SuiteResult out("crossing rule (p=2 generic, d<=" + std::to_string(max_d) + ")");
    const Ring r = Ring::make(2);
    DualSteenrod central(r, CrossingRule::Central), right_unit(r, CrossingRule::RightUnit);
    const SuiteResult naive = hopf_suite(central, max_d, {true});
    out.check(!naive.passed(), [] { return std::string("the Hopf suite passes with the central crossing rule"); });
    if (!naive.passed())
        out.notes.push_back("central rule: " + naive.first_failure);
    const SuiteResult twisted = hopf_suite(right_unit, max_d);
    out.check(twisted.passed(), [&] { return "the Hopf suite fails with eta_R: " + twisted.first_failure; });
    out.elapsed_ms = clock.ms();
    return out;
}

std::optional<SuiteGroup> parse_suite_group(std::string_view text)
{
    if (text == "dual")
        return SuiteGroup::Dual;
    if (text == "op")
        return SuiteGroup::Op;
    if (text == "bmu")
        return SuiteGroup::Bmu;
    if (text == "all")
        return SuiteGroup::All;
    return std::nullopt;
}

std::vector<SuiteResult> run_suite_group(SuiteGroup group, Ring ring, int max_d, std::uint32_t truncation)
{
    std::vector<SuiteResult> out;
    DualSteenrod dual(ring);
    const bool all = group == SuiteGroup::All;
    if (all || group == SuiteGroup::Dual) {
        out.push_back(relation_suite(dual));
        out.push_back(hopf_suite(dual, max_d));
    }
    // Q_4^2 needs twice the first degree of Q_4.
    const int window = std::max(max_d, 2 * tau_degree(ring.p, 4).d);
    MilnorAlgebra algebra(dual, window);
    if (all || group == SuiteGroup::Op) {
        out.push_back(duality_suite(algebra, max_d));
        out.push_back(psi_multiplicative_suite(algebra, std::min(max_d, ring.p == 2 ? 20 : 40)));
        out.push_back(q_suite(algebra));
        out.push_back(cartan_suite(algebra));
    }
    if (all || group == SuiteGroup::Bmu) {
        BmuComodule bmu(algebra, truncation);
        out.push_back(bmu_suite(bmu, std::min(max_d, 30)));
        out.push_back(margolis_suite(ring));
    }
    if (all && ring.p == 2 && ring.mode == BaseMode::Generic)
        out.push_back(crossing_suite(max_d));
    return out;
}

}  // namespace motsteen
