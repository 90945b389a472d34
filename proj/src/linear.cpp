#include "motsteen/linear.hpp"

namespace motsteen {

namespace {

template <class Tag, std::size_t N, class Fmt>
std::string format(const LinComb<Tag, N>& x, Fmt fmt)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& t : x.sorted_terms()) {
        if (!out.empty())
            out += " + ";
        std::string body;
        for (std::size_t i = 0; i < N; ++i) {
            if (i)
                body += "(x)";
            body += fmt(t.monos[i]);
        }
        bool trivial_coeff = t.c == 1 && t.coeff.is_one();
        if (N == 1 && t.monos[0].is_one())
            out += format_coeff_term(t.c, t.coeff);
        else if (trivial_coeff)
            out += body;
        else
            out += format_coeff_term(t.c, t.coeff) + "*" + body;
    }
    return out;
}

}  // namespace

std::string to_string(const DualElement& x) { return format(x, format_dual_monomial); }
std::string to_string(const DualTensor& x) { return format(x, format_dual_monomial); }
std::string to_string(const DualTensor3& x) { return format(x, format_dual_monomial); }
std::string to_string(const OpElement& x) { return format(x, format_op_basis); }
std::string to_string(const OpTensor& x) { return format(x, format_op_basis); }

}  // namespace motsteen
