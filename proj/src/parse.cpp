#include "motsteen/parse.hpp"

#include <cctype>
#include <functional>
#include <optional>

namespace motsteen {

namespace {

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
    std::size_t pos() const { return pos_; }
    void advance(std::size_t k = 1) { pos_ += k; }
    bool starts_with(std::string_view w) const { return src_.substr(pos_).starts_with(w); }
    bool eat(char c)
    {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }
    void expect(char c)
    {
        if (!eat(c))
            fail(std::string("expected '") + c + "'", {std::string(1, c)});
    }
    std::uint32_t integer()
    {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected an integer", {"INT"});
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + std::uint64_t(peek() - '0');
            if (v > 0x7fffffffu)
                fail("integer too large", {});
            ++pos_;
        }
        return std::uint32_t(v);
    }
    std::uint32_t optional_exponent()
    {
        if (!eat('^'))
            return 1;
        return integer();
    }
    std::vector<std::uint32_t> int_list(char close)
    {
        std::vector<std::uint32_t> out{integer()};
        while (eat(','))
            out.push_back(integer());
        expect(close);
        return out;
    }
    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const
    {
        throw ParseError(message, pos_, std::move(expected));
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

const std::vector<std::string> kCoeffAtoms{"INT", "tau", "rho"};

// Coefficient factor at the cursor, if any.
std::optional<Coeff> coeff_factor(Scanner& s, Ring ring)
{
    if (std::isdigit(static_cast<unsigned char>(s.peek())))
        return Coeff::constant(ring, s.integer());
    for (const char* name : {"tau", "rho"}) {
        if (!s.starts_with(name))
            continue;
        s.advance(3);
        std::uint32_t e = s.optional_exponent();
        CoeffMonomial m = name[0] == 't' ? CoeffMonomial{e, 0} : CoeffMonomial{0, e};
        return Coeff::monomial(ring, 1, m);
    }
    return std::nullopt;
}

template <class T>
struct Algebra {
    std::function<T(Scanner&)> atom;
    std::function<T(const T&, const T&)> mul;
    std::function<T(const T&, const T&)> add;
    std::function<T(const T&)> neg;
};

template <class T>
T parse_sum(std::string_view src, const Algebra<T>& alg)
{
    Scanner s(src);
    s.skip_ws();
    if (s.at_end())
        s.fail("empty expression", {"term"});
    std::optional<T> total;
    bool negate = s.eat('-');
    while (true) {
        s.skip_ws();
        T term = alg.atom(s);
        while (true) {
            s.skip_ws();
            if (s.at_end() || s.peek() == '+' || s.peek() == '-')
                break;
            s.eat('*');
            s.skip_ws();
            term = alg.mul(term, alg.atom(s));
        }
        if (negate)
            term = alg.neg(term);
        total = total ? alg.add(*total, term) : term;
        if (s.at_end())
            break;
        negate = s.peek() == '-';
        s.advance();
        s.skip_ws();
        if (s.at_end())
            s.fail("expected a term after the sign", {"term"});
    }
    return *total;
}

}  // namespace

Coeff parse_coeff(std::string_view src, Ring ring)
{
    Algebra<Coeff> alg{
        [ring](Scanner& s) {
            if (auto c = coeff_factor(s, ring))
                return *c;
            s.fail("expected a coefficient factor", kCoeffAtoms);
        },
        [](const Coeff& a, const Coeff& b) { return a * b; },
        [](const Coeff& a, const Coeff& b) { return a + b; },
        [](const Coeff& a) { return -a; },
    };
    return parse_sum(src, alg);
}

DualElement parse_dual(std::string_view src, const DualSteenrod& dual)
{
    const Ring ring = dual.ring();
    Algebra<DualElement> alg{
        [&](Scanner& s) {
            if (auto c = coeff_factor(s, ring))
                return dual.element(DualMonomial::one(), *c);
            char g = s.peek();
            if ((g == 't' || g == 'x') && std::isdigit(static_cast<unsigned char>(s.peek(1)))) {
                s.advance();
                std::size_t at = s.pos();
                std::uint32_t index = s.integer();
                std::uint32_t e = s.optional_exponent();
                if (index >= std::uint32_t(g == 't' ? DualMonomial::kMaxTau : DualMonomial::kMaxXi + 1))
                    throw ParseError("generator index out of range", at, {});
                RawFactor f{g == 't', int(index), e};
                return dual.normalize(std::span(&f, 1), Coeff::one(ring));
            }
            s.fail("unexpected input", {"INT", "tau", "rho", "t<i>", "x<j>"});
        },
        [&](const DualElement& a, const DualElement& b) { return dual.mul(a, b); },
        [](const DualElement& a, const DualElement& b) { return a + b; },
        [](const DualElement& a) { return -a; },
    };
    return parse_sum(src, alg);
}

OpElement parse_op(std::string_view src, const MilnorAlgebra& algebra)
{
    const Ring ring = algebra.ring();
    const std::vector<std::string> expected{"INT", "tau", "rho", "Q<i>", "QE{..}", "P<n>", "P(..)",
                                            "Sq<n>", "b", "q<t>", "M<k>"};
    Algebra<OpElement> alg{
        [&](Scanner& s) {
            if (auto c = coeff_factor(s, ring))
                return algebra.element(DualMonomial::one(), *c);
            const std::size_t at = s.pos();
            if (s.starts_with("Sq")) {
                s.advance(2);
                return algebra.sq(s.integer());
            }
            if (s.peek() == 'b' && !std::isalnum(static_cast<unsigned char>(s.peek(1)))) {
                s.advance();
                return algebra.bockstein();
            }
            if (s.peek() == 'q') {
                s.advance();
                std::uint32_t t = s.integer();
                if (t < 1 || t > std::uint32_t(DualMonomial::kMaxXi))
                    throw ParseError("q index must be between 1 and 12", at, {});
                return algebra.q_op(int(t));
            }
            if (s.peek() == 'M') {
                s.advance();
                std::uint32_t k = s.integer();
                if (k > 8)
                    throw ParseError("M index too large", at, {});
                return algebra.m_class(int(k));
            }
            if (s.peek() != 'Q' && s.peek() != 'P')
                s.fail("unexpected input", expected);
            DualMonomial label;
            if (s.eat('Q')) {
                std::vector<std::uint32_t> taus;
                if (s.eat('E')) {
                    s.expect('{');
                    taus = s.int_list('}');
                }
                else {
                    taus.push_back(s.integer());
                }
                for (auto i : taus) {
                    if (i >= std::uint32_t(DualMonomial::kMaxTau) || label.has_tau(int(i)))
                        throw ParseError("repeated or out-of-range Q index", at, {});
                    label.tau_mask |= 1u << i;
                }
            }
            if (s.eat('P')) {
                std::vector<std::uint32_t> rs;
                if (s.eat('('))
                    rs = s.int_list(')');
                else
                    rs.push_back(s.integer());
                if (rs.size() > std::size_t(DualMonomial::kMaxXi))
                    throw ParseError("too many P exponents", at, {});
                for (std::size_t j = 0; j < rs.size(); ++j) {
                    if (rs[j] > 0xffffu)
                        throw ParseError("P exponent too large", at, {});
                    label.xi[j] = std::uint16_t(rs[j]);
                }
            }
            return algebra.element(label);
        },
        [&](const OpElement& a, const OpElement& b) { return algebra.mul(a, b); },
        [](const OpElement& a, const OpElement& b) { return a + b; },
        [](const OpElement& a) { return -a; },
    };
    return parse_sum(src, alg);
}

BmuElement parse_bmu(std::string_view src, const BmuComodule& bmu)
{
    const Ring ring = bmu.ring();
    Algebra<BmuElement> alg{
        [&](Scanner& s) {
            if (auto c = coeff_factor(s, ring))
                return bmu.element({0, 0}, *c);
            if (s.peek() == 'u' || s.peek() == 'v') {
                const bool is_u = s.peek() == 'u';
                s.advance();
                std::uint32_t e = s.optional_exponent();
                if (is_u)
                    return bmu.power(bmu.u(), e);
                return bmu.element({0, e});
            }
            s.fail("unexpected input", {"INT", "tau", "rho", "u", "v"});
        },
        [&](const BmuElement& a, const BmuElement& b) { return bmu.mul(a, b); },
        [](const BmuElement& a, const BmuElement& b) { return a + b; },
        [](const BmuElement& a) { return a - a - a; },
    };
    return parse_sum(src, alg);
}

}  // namespace motsteen
