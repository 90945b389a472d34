#pragma once

// Sparse F_p[tau, rho]-linear combinations of tuples of Milnor monomials.
// Each term is stored as (coefficient monomial, tuple) -> residue; a tensor
// term c * (m1 (x) m2) keeps its coefficient on the far left.

#include "motsteen/coeff.hpp"
#include "motsteen/monomial.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace motsteen {

struct DualTag {};
struct OpTag {};

template <std::size_t N>
using MonoTuple = std::array<DualMonomial, N>;

template <std::size_t N>
struct TermKey {
    CoeffMonomial coeff;
    MonoTuple<N> monos;
    friend bool operator==(const TermKey&, const TermKey&) = default;
};

template <std::size_t N>
struct TermKeyHash {
    std::size_t operator()(const TermKey<N>& k) const noexcept
    {
        std::size_t h = std::hash<CoeffMonomial>{}(k.coeff);
        for (const auto& m : k.monos)
            h = (h * 0x9e3779b97f4a7c15ull) ^ DualMonomialHash{}(m);
        return h;
    }
};

template <class Tag, std::size_t N>
class LinComb {
public:
    using Key = TermKey<N>;
    using Map = std::unordered_map<Key, std::uint32_t, TermKeyHash<N>>;

    struct Term {
        CoeffMonomial coeff;
        MonoTuple<N> monos;
        std::uint32_t c;
    };

    explicit LinComb(Ring ring) : ring_(ring) {}

    static LinComb monomial(Ring ring, const MonoTuple<N>& m, const Coeff& c)
    {
        LinComb out(ring);
        out.add(c, m);
        return out;
    }

    const Ring& ring() const { return ring_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(CoeffMonomial coeff, const MonoTuple<N>& monos, std::uint32_t c)
    {
        c %= ring_.p;
        if (c == 0 || !admits(ring_, coeff))
            return;
        auto [it, inserted] = terms_.try_emplace(Key{coeff, monos}, c);
        if (!inserted) {
            it->second = add_mod(it->second, c, ring_.p);
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    void add(const Coeff& coeff, const MonoTuple<N>& monos)
    {
        require_same_ring(ring_, coeff.ring(), "linear combination");
        for (const auto& t : coeff.terms())
            add(t.mono, monos, t.c);
    }

    // this += (scale_coeff * scale_c) * other
    void add_scaled(const LinComb& other, CoeffMonomial scale_coeff = {}, std::uint32_t scale_c = 1)
    {
        require_same_ring(ring_, other.ring_, "linear combination");
        for (const auto& [k, c] : other.terms_)
            add(k.coeff * scale_coeff, k.monos, mul_mod(c, scale_c % ring_.p, ring_.p));
    }

    void add_scaled(const LinComb& other, const Coeff& scale)
    {
        require_same_ring(ring_, scale.ring(), "linear combination");
        for (const auto& t : scale.terms())
            add_scaled(other, t.mono, t.c);
    }

    // Coefficient of the tuple as an element of F_p[tau, rho].
    Coeff coefficient(const MonoTuple<N>& monos) const
    {
        Coeff out(ring_);
        for (const auto& [k, c] : terms_)
            if (k.monos == monos)
                out.add_term(k.coeff, c);
        return out;
    }

    // Terms in printing order: coefficient monomial, then tuples factor by factor.
    std::vector<Term> sorted_terms() const
    {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [k, c] : terms_)
            out.push_back({k.coeff, k.monos, c});
        const std::uint32_t p = ring_.p;
        std::sort(out.begin(), out.end(), [p](const Term& a, const Term& b) {
            if (a.coeff != b.coeff)
                return a.coeff < b.coeff;
            for (std::size_t i = 0; i < N; ++i) {
                if (a.monos[i] == b.monos[i])
                    continue;
                return print_less(a.monos[i], b.monos[i], p);
            }
            return false;
        });
        return out;
    }

    LinComb operator-() const
    {
        LinComb out(ring_);
        out.add_scaled(*this, {}, ring_.p - 1);
        return out;
    }
    friend LinComb operator+(const LinComb& a, const LinComb& b)
    {
        LinComb out = a;
        out.add_scaled(b);
        return out;
    }
    friend LinComb operator-(const LinComb& a, const LinComb& b)
    {
        LinComb out = a;
        out.add_scaled(b, {}, a.ring_.p - 1);
        return out;
    }
    friend LinComb operator*(const Coeff& a, const LinComb& x)
    {
        LinComb out(x.ring_);
        out.add_scaled(x, a);
        return out;
    }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.ring_ == b.ring_ && a.terms_ == b.terms_; }

private:
    Ring ring_;
    Map terms_;
};

using DualElement = LinComb<DualTag, 1>;
using DualTensor = LinComb<DualTag, 2>;
using DualTensor3 = LinComb<DualTag, 3>;
using OpElement = LinComb<OpTag, 1>;
using OpTensor = LinComb<OpTag, 2>;

// Canonical text: terms joined by " + ", tensor factors by "(x)".
std::string to_string(const DualElement& x);
std::string to_string(const DualTensor& x);
std::string to_string(const DualTensor3& x);
std::string to_string(const OpElement& x);
std::string to_string(const OpTensor& x);

}  // namespace motsteen
