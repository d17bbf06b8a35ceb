#pragma once

#include "permoments/moments.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

namespace pm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// One reproducible substream per (seed, stream) pair.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t stream);
    double uniform(); // in (0, 1]
    Complex complex_normal(); // E|z|^2 = 1

private:
    std::mt19937_64 engine_;
};

ComplexMatrix sample_gaussian(unsigned k, SampleStream& rng);
ComplexMatrix sample_haar_unitary(unsigned d, SampleStream& rng);
ComplexMatrix sample_haar_minor(unsigned d, unsigned k, SampleStream& rng);

constexpr unsigned max_permanent_size = 24;

Complex permanent(const ComplexMatrix& m);
Complex permanent_naive(const ComplexMatrix& m);
Complex permanent_scalar(const ComplexMatrix& m);
bool avx2_available();
Complex permanent_avx2(const ComplexMatrix& m); // throws UnsupportedError without AVX2
Complex determinant(const ComplexMatrix& m);

struct SampleConfig {
    Ensemble ensemble = Ensemble::Gaussian;
    unsigned k = 3;
    unsigned d = 0;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    std::vector<unsigned> orders = {1, 2};
    unsigned threads = 1;
    std::uint64_t shard_size = 16384;
    double gate_sigma = 4.0;
};

struct MomentEstimate {
    unsigned t = 0;
    double mean = 0;
    std::optional<double> standard_error; // absent for a single sample
    std::optional<Rational> exact;
    std::optional<double> z_score;
    bool gated = false; // t <= 2 comparisons are acceptance checks
    bool within_gate() const;
    double gate_sigma = 4.0;
};

struct EstimateReport {
    SampleConfig config;
    std::vector<MomentEstimate> moments;
};

EstimateReport estimate_moments(const SampleConfig& cfg, const MomentBudget& budget = {});
// One |statistic|^2 per line.
void dump_samples(const SampleConfig& cfg, std::ostream& out);

} // namespace pm
