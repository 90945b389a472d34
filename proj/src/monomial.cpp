#include "motsteen/monomial.hpp"

#include <limits>

namespace motsteen {

std::uint64_t ipow(std::uint64_t base, unsigned e)
{
    std::uint64_t out = 1;
    while (e--) {
        if (out > std::numeric_limits<std::uint64_t>::max() / base)
            throw WindowError("integer power overflow");
        out *= base;
    }
    return out;
}

namespace {
Bidegree checked(std::uint64_t d, std::uint64_t w)
{
    if (d > std::uint64_t(std::numeric_limits<int>::max() / 4))
        throw WindowError("generator degree exceeds the supported range");
    return {int(d), int(w)};
}
}  // namespace

Bidegree tau_degree(std::uint32_t p, int i)
{
    if (i < 0 || i >= DualMonomial::kMaxTau)
        throw WindowError("tau index " + std::to_string(i) + " out of range");
    std::uint64_t q = ipow(p, unsigned(i));
    return checked(2 * q - 1, q - 1);
}

Bidegree xi_degree(std::uint32_t p, int j)
{
    if (j < 1 || j > DualMonomial::kMaxXi)
        throw WindowError("xi index " + std::to_string(j) + " out of range");
    std::uint64_t q = ipow(p, unsigned(j));
    return checked(2 * (q - 1), q - 1);
}

DualMonomial DualMonomial::tau(int i)
{
    if (i < 0 || i >= kMaxTau)
        throw WindowError("tau index " + std::to_string(i) + " out of range");
    DualMonomial m;
    m.tau_mask = 1u << i;
    return m;
}

DualMonomial DualMonomial::xi_power(int j, std::uint32_t r)
{
    if (j < 1 || j > kMaxXi)
        throw WindowError("xi index " + std::to_string(j) + " out of range");
    if (r > std::numeric_limits<std::uint16_t>::max())
        throw WindowError("xi exponent " + std::to_string(r) + " out of range");
    DualMonomial m;
    m.xi[j - 1] = std::uint16_t(r);
    return m;
}

DualMonomial DualMonomial::from(const std::vector<int>& taus, const std::vector<std::uint32_t>& rs)
{
    DualMonomial m;
    for (int i : taus)
        m.tau_mask |= tau(i).tau_mask;
    if (rs.size() > std::size_t(kMaxXi))
        throw WindowError("too many xi exponents");
    for (std::size_t j = 0; j < rs.size(); ++j)
        m.xi[j] = xi_power(int(j + 1), rs[j]).xi[j];
    return m;
}

bool DualMonomial::is_one() const
{
    if (tau_mask)
        return false;
    for (auto r : xi)
        if (r)
            return false;
    return true;
}

int DualMonomial::xi_length() const
{
    for (int j = kMaxXi; j >= 1; --j)
        if (xi[j - 1])
            return j;
    return 0;
}

Bidegree DualMonomial::bidegree(std::uint32_t p) const
{
    std::int64_t d = 0, w = 0;
    for (std::uint32_t mask = tau_mask; mask; mask &= mask - 1) {
        auto bd = tau_degree(p, std::countr_zero(mask));
        d += bd.d;
        w += bd.w;
    }
    for (int j = 1; j <= kMaxXi; ++j) {
        if (!xi[j - 1])
            continue;
        auto bd = xi_degree(p, j);
        d += std::int64_t(xi[j - 1]) * bd.d;
        w += std::int64_t(xi[j - 1]) * bd.w;
    }
    if (d > std::numeric_limits<int>::max() / 4)
        throw WindowError("monomial degree exceeds the supported range");
    return {int(d), int(w)};
}

bool lex_less(const DualMonomial& a, const DualMonomial& b)
{
    if (a.has_tau(0) != b.has_tau(0))
        return b.has_tau(0);
    for (int j = 1; j < DualMonomial::kMaxTau; ++j) {
        if (a.has_tau(j) != b.has_tau(j))
            return b.has_tau(j);
        if (j <= DualMonomial::kMaxXi && a.xi[j - 1] != b.xi[j - 1])
            return a.xi[j - 1] < b.xi[j - 1];
    }
    return false;
}

bool print_less(const DualMonomial& a, const DualMonomial& b, std::uint32_t p)
{
    auto da = a.bidegree(p), db = b.bidegree(p);
    if (da.d != db.d)
        return da.d > db.d;
    if (da.w != db.w)
        return da.w > db.w;
    return lex_less(a, b);
}

std::string format_dual_monomial(const DualMonomial& m)
{
    if (m.is_one())
        return "1";
    std::string out;
    auto emit = [&](const std::string& piece) {
        if (!out.empty())
            out += ' ';
        out += piece;
    };
    for (int j = 0; j < DualMonomial::kMaxTau; ++j) {
        if (m.has_tau(j))
            emit("t" + std::to_string(j));
        if (j >= 1 && j <= DualMonomial::kMaxXi && m.xi[j - 1]) {
            std::string g = "x" + std::to_string(j);
            if (m.xi[j - 1] > 1)
                g += "^" + std::to_string(m.xi[j - 1]);
            emit(g);
        }
    }
    return out;
}

std::string format_op_basis(const DualMonomial& m)
{
    if (m.is_one())
        return "1";
    std::string out;
    if (m.tau_count() == 1) {
        out = "Q" + std::to_string(std::countr_zero(m.tau_mask));
    }
    else if (m.tau_count() > 1) {
        out = "QE{";
        bool first = true;
        for (std::uint32_t mask = m.tau_mask; mask; mask &= mask - 1) {
            if (!first)
                out += ',';
            out += std::to_string(std::countr_zero(mask));
            first = false;
        }
        out += '}';
    }
    int len = m.xi_length();
    if (len == 1) {
        out += "P" + std::to_string(m.xi[0]);
    }
    else if (len > 1) {
        out += "P(";
        for (int j = 1; j <= len; ++j) {
            if (j > 1)
                out += ',';
            out += std::to_string(m.xi[j - 1]);
        }
        out += ')';
    }
    return out;
}

}  // namespace motsteen
