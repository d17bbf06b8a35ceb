#include "permoments/montecarlo.hpp"

namespace pm {

ComplexMatrix sample_gaussian(unsigned k, SampleStream& rng)
{
    ComplexMatrix m(k, k);
    for (unsigned j = 0; j < k; ++j)
        for (unsigned i = 0; i < k; ++i)
            m(i, j) = rng.complex_normal();
    return m;
}

ComplexMatrix sample_haar_unitary(unsigned d, SampleStream& rng)
{
    if (d == 0)
        throw DomainError("sample_haar_unitary: dimension must be positive");
    ComplexMatrix g = sample_gaussian(d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    // fix the phases so that R has a positive real diagonal, which makes Q Haar distributed
    for (unsigned j = 0; j < d; ++j) {
        Complex rjj = r(j, j);
        double a = std::abs(rjj);
        if (a > 0)
            q.col(j) *= rjj / a;
    }
    return q;
}

ComplexMatrix sample_haar_minor(unsigned d, unsigned k, SampleStream& rng)
{
    if (k == 0 || k > d)
        throw DomainError("sample_haar_minor: need 1 <= k <= d, got k=" + std::to_string(k) + " d=" +
                          std::to_string(d));
    return sample_haar_unitary(d, rng).topLeftCorner(k, k);
}

} // namespace pm
