#include "permoments/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace pm {

#if PM_BUILD_AVX2
Complex ryser_avx2_kernel(const Complex* colmajor, unsigned n);
#endif

namespace {

void check_square(const ComplexMatrix& m, const char* who)
{
    if (m.rows() != m.cols())
        throw DomainError(std::string(who) + ": matrix must be square");
    if (m.rows() > max_permanent_size)
        throw ResourceError(std::string(who) + ": size " + std::to_string(m.rows()) + " exceeds " +
                            std::to_string(max_permanent_size));
}

} // namespace

Complex permanent_naive(const ComplexMatrix& m)
{
    if (m.rows() != m.cols())
        throw DomainError("permanent_naive: matrix must be square");
    if (m.rows() > 10)
        throw ResourceError("permanent_naive: size above 10");
    auto n = static_cast<unsigned>(m.rows());
    std::vector<unsigned> p(n);
    std::iota(p.begin(), p.end(), 0u);
    Complex total = 0;
    do {
        Complex term = 1;
        for (unsigned i = 0; i < n; ++i)
            term *= m(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

Complex permanent_scalar(const ComplexMatrix& m)
{
    check_square(m, "permanent");
    auto n = static_cast<unsigned>(m.rows());
    if (n == 0)
        return 1;
    // Ryser with Gray-code updates of the row sums
    std::vector<Complex> rows(n, 0.0);
    Complex total = 0;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 1; step < (std::uint64_t(1) << n); ++step) {
        unsigned j = static_cast<unsigned>(std::countr_zero(step));
        gray ^= std::uint64_t(1) << j;
        if (gray >> j & 1u)
            for (unsigned i = 0; i < n; ++i)
                rows[i] += m(i, j);
        else
            for (unsigned i = 0; i < n; ++i)
                rows[i] -= m(i, j);
        Complex prod = rows[0];
        for (unsigned i = 1; i < n; ++i)
            prod *= rows[i];
        if (std::popcount(gray) & 1)
            total -= prod;
        else
            total += prod;
    }
    return (n & 1) ? -total : total;
}

bool avx2_available()
{
#if PM_BUILD_AVX2
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Complex permanent_avx2(const ComplexMatrix& m)
{
    check_square(m, "permanent");
    if (!avx2_available())
        throw UnsupportedError("permanent_avx2: AVX2/FMA not available on this build or CPU");
#if PM_BUILD_AVX2
    if (m.rows() == 0)
        return 1;
    return ryser_avx2_kernel(m.data(), static_cast<unsigned>(m.rows()));
#else
    return 0;
#endif
}

Complex permanent(const ComplexMatrix& m)
{
    check_square(m, "permanent");
    if (m.rows() >= 8 && avx2_available())
        return permanent_avx2(m);
    return permanent_scalar(m);
}

Complex determinant(const ComplexMatrix& m)
{
    if (m.rows() != m.cols())
        throw DomainError("determinant: matrix must be square");
    if (m.rows() == 0)
        return 1;
    return m.partialPivLu().determinant();
}

} // namespace pm
