#include "permoments/montecarlo.hpp"

#include <cmath>
#include <numbers>

namespace pm {

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double SampleStream::uniform()
{
    // 53 random bits, shifted off zero so the logarithm below stays finite
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

Complex SampleStream::complex_normal()
{
    // Box-Muller: one pair of uniforms gives two independent N(0, 1/2) parts
    double r = std::sqrt(-std::log(uniform()));
    double phi = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace pm
