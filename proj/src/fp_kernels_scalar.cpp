#include "motsteen/fp_kernels.hpp"

#include "motsteen/coeff.hpp"

#include <utility>

namespace motsteen::fp {

std::string_view to_string(Kernel k) { return k == Kernel::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported()
{
#if defined(__x86_64__) || defined(__i386__)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

Kernel select_kernel(std::uint32_t p) { return avx2_supported() && p < (1u << 16) ? Kernel::Avx2 : Kernel::Scalar; }

void axpy_scalar(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t a, std::uint32_t p)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] = std::uint32_t((y[i] + std::uint64_t(a) * x[i]) % p);
}

void scale_scalar(std::uint32_t* y, std::size_t n, std::uint32_t a, std::uint32_t p)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] = std::uint32_t(std::uint64_t(a) * y[i] % p);
}

void axpy(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t a, std::uint32_t p)
{
    if (select_kernel(p) == Kernel::Avx2)
        axpy_avx2(y, x, n, a, p);
    else
        axpy_scalar(y, x, n, a, p);
}

void scale(std::uint32_t* y, std::size_t n, std::uint32_t a, std::uint32_t p)
{
    if (select_kernel(p) == Kernel::Avx2)
        scale_avx2(y, n, a, p);
    else
        scale_scalar(y, n, a, p);
}

std::size_t rank(std::vector<std::uint32_t> m, std::size_t rows, std::size_t cols, std::uint32_t p, Kernel kernel)
{
    auto row = [&](std::size_t r) { return m.data() + r * cols; };
    for (auto& v : m)
        v %= p;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && row(pivot)[c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        if (pivot != r)
            for (std::size_t k = 0; k < cols; ++k)
                std::swap(row(pivot)[k], row(r)[k]);
        std::uint32_t inv = inv_mod(row(r)[c], p);
        if (kernel == Kernel::Avx2)
            scale_avx2(row(r) + c, cols - c, inv, p);
        else
            scale_scalar(row(r) + c, cols - c, inv, p);
        for (std::size_t k = r + 1; k < rows; ++k) {
            std::uint32_t f = row(k)[c];
            if (f == 0)
                continue;
            if (kernel == Kernel::Avx2)
                axpy_avx2(row(k) + c, row(r) + c, cols - c, p - f, p);
            else
                axpy_scalar(row(k) + c, row(r) + c, cols - c, p - f, p);
        }
        ++r;
    }
    return r;
}

std::size_t rank(std::vector<std::uint32_t> matrix, std::size_t rows, std::size_t cols, std::uint32_t p)
{
    return rank(std::move(matrix), rows, cols, p, select_kernel(p));
}

}  // namespace motsteen::fp
