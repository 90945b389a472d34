#include "motsteen/linalg.hpp"

#include "motsteen/fp_kernels.hpp"

#include <utility>

namespace motsteen {

CoeffMatrix::CoeffMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Coeff(ring))
{
}

bool CoeffMatrix::is_zero() const
{
    for (const auto& e : entries_)
        if (!e.is_zero())
            return false;
    return true;
}

CoeffMatrix CoeffMatrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const
{
    CoeffMatrix out(ring_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out.at(i, j) = at(rows[i], cols[j]);
    return out;
}

std::vector<std::uint32_t> CoeffMatrix::specialize(std::uint32_t tau_value, std::uint32_t rho_value) const
{
    std::vector<std::uint32_t> out(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k)
        out[k] = entries_[k].evaluate(tau_value, rho_value);
    return out;
}

CoeffMatrix operator*(const CoeffMatrix& a, const CoeffMatrix& b)
{
    require_same_ring(a.ring_, b.ring_, "matrix product");
    if (a.cols_ != b.rows_)
        throw ContractError("matrix product: dimension mismatch");
    CoeffMatrix out(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Coeff& x = a.at(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b.at(k, j).is_zero())
                    out.at(i, j) = out.at(i, j) + x * b.at(k, j);
        }
    return out;
}

std::size_t rank_fraction_free(const CoeffMatrix& input)
{
    CoeffMatrix m = input;
    const std::size_t rows = m.rows(), cols = m.cols();
    Coeff prev = Coeff::one(m.ring());
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m.at(pivot, c).is_zero())
            ++pivot;
        if (pivot == rows)
            continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m.at(pivot, j), m.at(r, j));
        const Coeff piv = m.at(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Coeff lead = m.at(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                Coeff num = piv * m.at(i, j) - lead * m.at(r, j);
                m.at(i, j) = num.is_zero() ? num : divide_exact(num, prev);
            }
            m.at(i, c) = Coeff(m.ring());
        }
        prev = piv;
        ++r;
    }
    return r;
}

std::size_t rank_specialized(const CoeffMatrix& m, std::uint32_t tau_value, std::uint32_t rho_value)
{
    return fp::rank(m.specialize(tau_value, rho_value), m.rows(), m.cols(), m.ring().p);
}

}  // namespace motsteen
