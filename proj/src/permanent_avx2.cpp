#include <immintrin.h>

#include <bit>
#include <complex>
#include <cstdint>
#include <vector>

namespace pm {

using Complex = std::complex<double>;

// Row sums live in split real/imaginary lanes of four rows each; padded rows hold 1
// so they drop out of the product.
Complex ryser_avx2_kernel(const Complex* colmajor, unsigned n)
{
    unsigned blocks = (n + 3) / 4;
    unsigned padded = blocks * 4;
    std::vector<double> col_re(std::size_t(padded) * n, 0.0), col_im(std::size_t(padded) * n, 0.0);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i) {
            col_re[j * padded + i] = colmajor[j * n + i].real();
            col_im[j * padded + i] = colmajor[j * n + i].imag();
        }
    std::vector<double> row_re(padded, 0.0), row_im(padded, 0.0);
    for (unsigned i = n; i < padded; ++i)
        row_re[i] = 1.0;

    double total_re = 0, total_im = 0;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 1; step < (std::uint64_t(1) << n); ++step) {
        unsigned j = static_cast<unsigned>(std::countr_zero(step));
        gray ^= std::uint64_t(1) << j;
        const double* cre = &col_re[std::size_t(j) * padded];
        const double* cim = &col_im[std::size_t(j) * padded];
        bool add = gray >> j & 1u;
        __m256d pre = _mm256_set1_pd(1.0), pim = _mm256_setzero_pd();
        for (unsigned b = 0; b < blocks; ++b) {
            __m256d re = _mm256_loadu_pd(&row_re[b * 4]);
            __m256d im = _mm256_loadu_pd(&row_im[b * 4]);
            __m256d dre = _mm256_loadu_pd(cre + b * 4);
            __m256d dim = _mm256_loadu_pd(cim + b * 4);
            re = add ? _mm256_add_pd(re, dre) : _mm256_sub_pd(re, dre);
            im = add ? _mm256_add_pd(im, dim) : _mm256_sub_pd(im, dim);
            _mm256_storeu_pd(&row_re[b * 4], re);
            _mm256_storeu_pd(&row_im[b * 4], im);
            __m256d nre = _mm256_fmsub_pd(pre, re, _mm256_mul_pd(pim, im));
            __m256d nim = _mm256_fmadd_pd(pre, im, _mm256_mul_pd(pim, re));
            pre = nre;
            pim = nim;
        }
        alignas(32) double lre[4], lim[4];
        _mm256_store_pd(lre, pre);
        _mm256_store_pd(lim, pim);
        Complex prod(lre[0], lim[0]);
        for (int l = 1; l < 4; ++l)
            prod *= Complex(lre[l], lim[l]);
        if (std::popcount(gray) & 1) {
            total_re -= prod.real();
            total_im -= prod.imag();
        } else {
            total_re += prod.real();
            total_im += prod.imag();
        }
    }
    Complex total(total_re, total_im);
    return (n & 1) ? -total : total;
}

} // namespace pm
