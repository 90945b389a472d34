#pragma once

// Dense F_p row kernels for elimination.  A scalar reference implementation
// and an AVX2 variant are compiled side by side; the AVX2 path is chosen at
// runtime when the CPU supports it and p < 2^16.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace motsteen::fp {

enum class Kernel : std::uint8_t { Scalar, Avx2 };

std::string_view to_string(Kernel k);
bool avx2_supported();
// The kernel axpy() dispatches to for modulus p.
Kernel select_kernel(std::uint32_t p);

// y[i] = (y[i] + a * x[i]) mod p; all inputs are residues in [0, p).
void axpy_scalar(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t a, std::uint32_t p);
// Requires p < 2^16 and an AVX2-capable CPU.
void axpy_avx2(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t a, std::uint32_t p);
void axpy(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t a, std::uint32_t p);

// y[i] = a * y[i] mod p.
void scale_scalar(std::uint32_t* y, std::size_t n, std::uint32_t a, std::uint32_t p);
void scale_avx2(std::uint32_t* y, std::size_t n, std::uint32_t a, std::uint32_t p);
void scale(std::uint32_t* y, std::size_t n, std::uint32_t a, std::uint32_t p);

// Rank of a row-major rows x cols matrix over F_p (entries reduced mod p).
std::size_t rank(std::vector<std::uint32_t> matrix, std::size_t rows, std::size_t cols, std::uint32_t p,
                 Kernel kernel);
std::size_t rank(std::vector<std::uint32_t> matrix, std::size_t rows, std::size_t cols, std::uint32_t p);

}  // namespace motsteen::fp
