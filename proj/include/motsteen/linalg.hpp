#pragma once

// Matrices over F_p[tau, rho] and their ranks: over the fraction field by
// fraction-free (Bareiss) elimination, or over F_p after substituting
// residues for tau and rho.

#include "motsteen/coeff.hpp"

#include <vector>

namespace motsteen {

class CoeffMatrix {
public:
    CoeffMatrix(Ring ring, std::size_t rows, std::size_t cols);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Coeff& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Coeff& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_zero() const;
    // Submatrix on the given rows and columns (in the given order).
    CoeffMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    std::vector<std::uint32_t> specialize(std::uint32_t tau_value, std::uint32_t rho_value) const;

    friend CoeffMatrix operator*(const CoeffMatrix& a, const CoeffMatrix& b);
    friend bool operator==(const CoeffMatrix&, const CoeffMatrix&) = default;

private:
    Ring ring_;
    std::size_t rows_, cols_;
    std::vector<Coeff> entries_;
};

// Rank over F_p(tau, rho).
std::size_t rank_fraction_free(const CoeffMatrix& m);
// Rank over F_p of the matrix with tau and rho replaced by residues.
std::size_t rank_specialized(const CoeffMatrix& m, std::uint32_t tau_value, std::uint32_t rho_value);

}  // namespace motsteen
