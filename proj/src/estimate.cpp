#include "permoments/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

namespace pm {

namespace {

struct Accumulator {
    std::uint64_t n = 0;
    double mean = 0;
    double m2 = 0;

    void push(double x)
    {
        ++n;
        double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Accumulator& o)
    {
        if (o.n == 0)
            return;
        if (n == 0) {
            *this = o;
            return;
        }
        double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        double delta = o.mean - mean;
        std::uint64_t total = n + o.n;
        double nt = static_cast<double>(total);
        mean += delta * nb / nt;
        m2 += o.m2 + delta * delta * na * nb / nt;
        n = total;
    }
};

void validate(const SampleConfig& cfg)
{
    if (cfg.samples == 0)
        throw DomainError("estimate_moments: sample count must be at least 1");
    if (cfg.k == 0)
        throw DomainError("estimate_moments: k must be positive");
    if (cfg.k > max_permanent_size)
        throw ResourceError("estimate_moments: k=" + std::to_string(cfg.k) + " exceeds permanent size limit " +
                            std::to_string(max_permanent_size));
    bool unitary = cfg.ensemble == Ensemble::UnitaryMinor || cfg.ensemble == Ensemble::DeterminantUnitaryMinor;
    if (unitary && (cfg.d < cfg.k))
        throw DomainError("estimate_moments: unitary ensembles need d >= k, got d=" + std::to_string(cfg.d) +
                          " k=" + std::to_string(cfg.k));
    if (cfg.shard_size == 0)
        throw DomainError("estimate_moments: shard size must be positive");
}

// |Perm|^2 or |det|^2 of one fresh matrix
double draw(const SampleConfig& cfg, SampleStream& rng)
{
    switch (cfg.ensemble) {
    case Ensemble::Gaussian:
        return std::norm(permanent(sample_gaussian(cfg.k, rng)));
    case Ensemble::UnitaryMinor:
        return std::norm(permanent(sample_haar_minor(cfg.d, cfg.k, rng)));
    case Ensemble::DeterminantGaussian:
        return std::norm(determinant(sample_gaussian(cfg.k, rng)));
    case Ensemble::DeterminantUnitaryMinor:
        return std::norm(determinant(sample_haar_minor(cfg.d, cfg.k, rng)));
    }
    return 0;
}

std::vector<Accumulator> run_shard(const SampleConfig& cfg, std::uint64_t shard)
{
    std::uint64_t begin = shard * cfg.shard_size;
    std::uint64_t end = std::min(cfg.samples, begin + cfg.shard_size);
    SampleStream rng(cfg.seed, shard);
    std::vector<Accumulator> acc(cfg.orders.size());
    for (std::uint64_t s = begin; s < end; ++s) {
        double x = draw(cfg, rng);
        for (std::size_t i = 0; i < cfg.orders.size(); ++i)
            acc[i].push(std::pow(x, cfg.orders[i]));
    }
    return acc;
}

std::optional<Rational> exact_reference(const SampleConfig& cfg, unsigned t, const MomentBudget& budget)
{
    try {
        switch (cfg.ensemble) {
        case Ensemble::Gaussian:
            return gaussian_moment_exact(cfg.k, t, MomentMethod::Auto, budget).value;
        case Ensemble::UnitaryMinor:
            return unitary_minor_moment(cfg.d, cfg.k, t).value;
        case Ensemble::DeterminantGaussian:
            return Rational(det_moment_gaussian(cfg.k, t));
        case Ensemble::DeterminantUnitaryMinor:
            return det_moment_unitary_minor(cfg.d, cfg.k, t);
        }
    } catch (const ResourceError&) {
    } catch (const UnsupportedError&) {
    }
    return std::nullopt;
}

} // namespace

bool MomentEstimate::within_gate() const
{
    if (!gated || !z_score)
        return true;
    return std::abs(*z_score) <= gate_sigma;
}

EstimateReport estimate_moments(const SampleConfig& cfg, const MomentBudget& budget)
{
    validate(cfg);
    std::uint64_t shards = (cfg.samples + cfg.shard_size - 1) / cfg.shard_size;
    std::vector<std::vector<Accumulator>> partial(shards);
    unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(shards)));
    if (workers == 1) {
        for (std::uint64_t s = 0; s < shards; ++s)
            partial[s] = run_shard(cfg, s);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t s = w; s < shards; s += workers)
                    partial[s] = run_shard(cfg, s);
            });
    }

    std::vector<Accumulator> total(cfg.orders.size());
    for (const auto& shard : partial)
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i].merge(shard[i]);

    EstimateReport report;
    report.config = cfg;
    for (std::size_t i = 0; i < cfg.orders.size(); ++i) {
        MomentEstimate e;
        e.t = cfg.orders[i];
        e.mean = total[i].mean;
        e.gate_sigma = cfg.gate_sigma;
        e.gated = e.t <= 2;
        auto n = static_cast<double>(total[i].n);
        if (total[i].n > 1)
            e.standard_error = std::sqrt(total[i].m2 / (n - 1)) / std::sqrt(n);
        e.exact = exact_reference(cfg, e.t, budget);
        if (e.exact && e.standard_error) {
            // rounding noise when the statistic is constant, e.g. d = k determinants
            double exact = to_double(*e.exact);
            double se = std::max(*e.standard_error, 1e-12 * std::abs(exact));
            e.z_score = se > 0 ? (e.mean - exact) / se : (e.mean == exact ? 0.0 : INFINITY);
        }
        report.moments.push_back(std::move(e));
    }
    return report;
}

void dump_samples(const SampleConfig& cfg, std::ostream& out)
{
    validate(cfg);
    std::uint64_t shards = (cfg.samples + cfg.shard_size - 1) / cfg.shard_size;
    out << std::setprecision(17);
    for (std::uint64_t s = 0; s < shards; ++s) {
        std::uint64_t begin = s * cfg.shard_size;
        std::uint64_t end = std::min(cfg.samples, begin + cfg.shard_size);
        SampleStream rng(cfg.seed, s);
        for (std::uint64_t i = begin; i < end; ++i)
            out << draw(cfg, rng) << '\n';
    }
}

} // namespace pm
