#include "permoments/largedev.hpp"
#include "permoments/montecarlo.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace pm;

namespace {

// Collects the first failed check of a criterion.
class Check {
public:
    void operator()(bool ok, const std::string& what)
    {
        if (!ok && failure_.empty())
            failure_ = what;
        ++count_;
    }
    bool ok() const { return failure_.empty(); }
    const std::string& failure() const { return failure_; }
    int count() const { return count_; }

private:
    std::string failure_;
    int count_ = 0;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body)
{
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << "criterion " << id << (check.ok() ? " PASS: " : " FAIL: ") << title << " (" << check.count()
              << " checks, " << timing << ")";
    if (!check.ok()) {
        std::cout << " -- " << check.failure();
        ++failures;
    }
    std::cout << std::endl;
}

std::string tag(unsigned k, unsigned t)
{
    return "(" + std::to_string(k) + "," + std::to_string(t) + ")";
}

Rational base(unsigned k, unsigned t)
{
    return Rational(ipow(factorial(k), t) * ipow(factorial(t), k));
}

Rational gaussian(unsigned k, unsigned t)
{
    return gaussian_moment_exact(k, t).value;
}

Rational factorial_scale(unsigned t)
{
    Int s = factorial(t) * factorial(t - 1);
    for (unsigned q : {3u, 4u, 5u, 7u})
        s *= factorial(t / q);
    return Rational(s);
}

// leading n digits of a printed decimal
std::string digits(const std::string& printed, int n)
{
    std::string d;
    for (char c : printed)
        if (c != '.')
            d += c;
    return d.substr(0, static_cast<std::size_t>(n));
}

// truncation to two significant figures
double two_figures(double x)
{
    double scale = std::pow(10.0, 1 - std::floor(std::log10(std::abs(x))));
    return std::trunc(x * scale) / scale;
}

Int pow2_3(unsigned a, unsigned b)
{
    return ipow(Int(2), a) * ipow(Int(3), b);
}

} // namespace

int main()
{
    criterion(1, "exact moment table, k = 3 and 4, t = 1..10", [](Check& check) {
        auto rows = fixture::read_csv("moments_k3_k4.csv");
        check(rows.size() == 10, "fixture has 10 rows");
        for (const auto& r : rows) {
            unsigned t = static_cast<unsigned>(std::stoul(r[0]));
            for (unsigned col : {1u, 3u}) {
                unsigned k = col == 1 ? 3 : 4;
                MomentReport rep = gaussian_moment_exact(k, t);
                check(to_string(rep.value) == r[col], "moment " + tag(k, t));
                check(fixed_decimals(*rep.normalized_ratio, 3, Rounding::TowardZero) == r[col + 1], "ratio " + tag(k, t));
            }
        }
        check(gaussian(3, 3) == 8784, "(3,3) = 8784");
        check(gaussian(4, 5) == Rational(Int("2076785049600")), "(4,5)");
        check(gaussian(4, 10) == Rational(Int("273409548213807664837794201600000")), "(4,10)");
    });

    criterion(2, "scaled k = 3 moments, t = 1..30", [](Check& check) {
        auto rows = fixture::read_csv("k3_scaled_moments.csv");
        check(rows.size() >= 30, "fixture rows");
        for (unsigned t = 1; t <= 30; ++t) {
            const auto& r = rows[t - 1];
            MomentReport rep = gaussian_moment_exact(3, t);
            check(rep.value == Rational(Int(r[1])) * factorial_scale(t), "scaled moment t=" + std::to_string(t));
            check(digits(fixed_significant(*rep.normalized_ratio, 15), 12) == digits(r[2], 12),
                  "ratio t=" + std::to_string(t));
        }
    });

    criterion(3, "size-moment duality", [](Check& check) {
        for (unsigned k = 1; k <= 4; ++k)
            for (unsigned t = 1; t <= 4; ++t)
                check(gaussian(k, t) == gaussian(t, k), tag(k, t));
        for (unsigned t = 1; t <= 10; ++t)
            check(gaussian(3, t) == gaussian(t, 3), tag(3, t));
    });

    criterion(4, "RC traces on the 3x3 and 4x3 grids", [](Check& check) {
        std::map<Partition, Int> g33{{Partition{9}, pow2_3(6, 6)},
                                     {Partition{7, 2}, pow2_3(6, 4)},
                                     {Partition{6, 3}, pow2_3(8, 2)},
                                     {Partition{5, 2, 2}, pow2_3(4, 2)},
                                     {Partition{4, 4, 1}, pow2_3(6, 2)}};
        std::map<Partition, Int> g43{{Partition{12}, pow2_3(13, 7)},   {Partition{10, 2}, pow2_3(11, 6)},
                                     {Partition{9, 3}, pow2_3(11, 5)},  {Partition{8, 4}, pow2_3(12, 4)},
                                     {Partition{6, 6}, pow2_3(12, 3)},  {Partition{8, 2, 2}, pow2_3(9, 4)},
                                     {Partition{7, 4, 1}, pow2_3(10, 4)}, {Partition{6, 4, 2}, pow2_3(11, 2)},
                                     {Partition{4, 4, 4}, pow2_3(9, 3)}};
        for (auto [grid, expect] : {std::pair{GridSpec(3, 3), g33}, {GridSpec(4, 3), g43}}) {
            std::size_t nonzero = 0;
            for (const auto& shape : expansion_shapes(grid)) {
                Int v = trace_rc_general(shape, grid);
                Int want = expect.count(shape) ? expect[shape] : Int(0);
                check(v == want, shape.str() + " on " + tag(grid.k, grid.t));
                nonzero += v != 0;
            }
            check(nonzero == expect.size(), "nonzero count");
        }
    });

    criterion(5, "closed-form anchors and the determinant chain", [](Check& check) {
        for (unsigned k = 1; k <= 8; ++k) {
            check(gaussian(k, 1) == Rational(factorial(k)), "E|Perm|^2 k=" + std::to_string(k));
            check(gaussian(k, 2) == Rational(factorial(k) * factorial(k + 1)), "E|Perm|^4 k=" + std::to_string(k));
        }
        for (unsigned k = 1; k <= 4; ++k)
            for (unsigned t = 1; t <= 10; ++t) {
                Int p = 1;
                for (unsigned i = 1; i <= k; ++i)
                    for (unsigned j = 1; j <= t; ++j)
                        p *= i + j - 1;
                check(det_moment_gaussian(k, t) == p, "det product " + tag(k, t));
                check(Rational(p) <= gaussian(k, t), "det <= perm " + tag(k, t));
            }
    });

    criterion(6, "expansion completeness and the two moment pipelines", [](Check& check) {
        for (auto [k, t] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}}) {
            GridSpec g(k, t);
            Rational sum = 0;
            for (const auto& e : trace_table(g, TraceKind::RC).entries)
                sum += Rational(hook_dim(e.shape)) * e.value;
            check(sum / Rational(factorial(k * t)) == 1, "completeness " + tag(k, t));
            Rational assembled = gaussian_moment_from_traces(trace_table(g, TraceKind::RCRC));
            check(assembled == Rational(gaussian_moment_magic(k, t)), "RCRC vs magic " + tag(k, t));
            check(assembled == Rational(oracle::gaussian_moment_wick(k, t)), "RCRC vs Wick " + tag(k, t));
        }
    });

    criterion(7, "lower bounds below the exact moments; k = 3 asymptote", [](Check& check) {
        for (unsigned t = 3; t <= 30; ++t) {
            Rational exact = gaussian(3, t);
            check(gaussian_moment_lower_bound(3, t, BoundDepth::FourTerm) <= exact, "four-term " + tag(3, t));
        }
        for (unsigned t = 3; t <= 10; ++t) {
            Rational exact = gaussian(4, t);
            check(gaussian_moment_lower_bound(4, t, BoundDepth::FourTerm) <= exact, "four-term " + tag(4, t));
            if (t >= 4)
                check(gaussian_moment_lower_bound(4, t, BoundDepth::ThirteenEighths) <= exact, "13/8 " + tag(4, t));
        }
        check(deep_bound_asymptote_k3() == Rational(8849, 5040), "8849/5040");
    });

    criterion(8, "t = 2 closed form against the Q-difference route, a <= k <= 40", [](Check& check) {
        for (unsigned k = 1; k <= 40; ++k)
            for (unsigned a = 0; a <= k; ++a) {
                check(trace_rc_t2_closed(k, a) == Rational(trace_rc_two_row(k, 2, a)), "k=" + std::to_string(k) +
                                                                                           " a=" + std::to_string(a));
            }
    });

    criterion(9, "unitary minors", [](Check& check) {
        for (unsigned d = 1; d <= 8; ++d)
            for (unsigned k = 1; k <= d; ++k) {
                Rational t1 = unitary_minor_moment(d, k, 1).value;
                check(t1 == Rational(1) / Rational(binomial(k + d - 1, k)), "t=1 " + tag(d, k));
                check(t1 == unitary_moment_from_traces(d, trace_table(GridSpec(k, 1), TraceKind::RCRC)),
                      "t=1 expansion " + tag(d, k));
                Rational t2 = unitary_minor_moment(d, k, 2).value;
                if (k <= 6)
                    check(t2 == unitary_moment_from_traces(d, trace_table(GridSpec(k, 2), TraceKind::RCRC)),
                          "t=2 expansion " + tag(d, k));
                for (unsigned t = 1; t <= 2; ++t)
                    check(unitary_minor_lower_bound(d, k, t) <= unitary_minor_moment(d, k, t).value,
                          "bound " + tag(d, k));
            }
        check(unitary_minor_moment(3, 3, 3).value == Rational(323, 57750), "U(3) sixth moment");
        check(unitary_minor_moment(4, 4, 3).value == Rational(578047, 4138509375), "U(4) sixth moment");
        for (auto [d, k] : {std::pair{3u, 3u}, {4u, 3u}, {4u, 4u}, {5u, 3u}, {8u, 4u}})
            check(unitary_minor_lower_bound(d, k, 3) <= unitary_minor_moment(d, k, 3).value, "bound t=3 " + tag(d, k));
        check(two_figures(hunter_jones_relative_error(3, 3)) == -0.072, "Hunter-Jones d=3");
        check(two_figures(hunter_jones_relative_error(4, 3)) == -0.0019, "Hunter-Jones d=4");
    });

    criterion(10, "determinants of unitary minors", [](Check& check) {
        for (unsigned d = 1; d <= 8; ++d)
            for (unsigned k = 1; k <= d; ++k) {
                // Cauchy-Binet: all k x k minors share E|det|^2 and their squares sum to 1
                check(det_moment_unitary_minor(d, k, 1) == Rational(1) / Rational(binomial(d, k)), "t=1 " + tag(d, k));
                for (unsigned t = 0; t <= 8; ++t)
                    if (k == 1)
                        check(det_moment_unitary_minor(d, 1, t) ==
                                  Rational(factorial(t) * factorial(d - 1)) / Rational(factorial(d + t - 1)),
                              "k=1 " + tag(d, t));
                for (unsigned t = 0; t <= 8; ++t)
                    if (k == d)
                        check(det_moment_unitary_minor(d, d, t) == 1, "d=k " + tag(d, t));
            }
        for (unsigned k = 1; k <= 4; ++k)
            for (unsigned t = 1; t <= 6; ++t) {
                Rational scaled = rpow(Rational(10000), static_cast<int>(k * t)) * det_moment_unitary_minor(10000, k, t);
                double rel = to_double(scaled / Rational(det_moment_gaussian(k, t))) - 1;
                check(std::abs(rel) < 0.01, "scaling " + tag(k, t));
            }
    });

    criterion(11, "Monte Carlo within 4 standard errors, N = 10^6", [](Check& check) {
        auto run = [&](Ensemble e, unsigned d, unsigned k) {
            SampleConfig cfg;
            cfg.ensemble = e;
            cfg.k = k;
            cfg.d = d;
            cfg.samples = 1'000'000;
            cfg.seed = 20240601;
            cfg.orders = {1, 2};
            for (const auto& m : estimate_moments(cfg).moments) {
                std::ostringstream what;
                what << to_string(e) << " d=" << d << " k=" << k << " t=" << m.t << " z=" << m.z_score.value_or(NAN);
                check(m.gated && m.within_gate(), what.str());
            }
        };
        run(Ensemble::Gaussian, 0, 3);
        run(Ensemble::Gaussian, 0, 4);
        for (unsigned d = 1; d <= 4; ++d)
            for (unsigned k = 1; k <= d; ++k)
                run(Ensemble::UnitaryMinor, d, k);
    });

    criterion(12, "large deviations", [](Check& check) {
        using namespace pm::ldev;
        check(std::abs(lambda_scgf(3).lo - std::log(4.0 / 3.0)) < 1e-12, "lambda(3)");
        double y0 = branch_boundary();
        for (int t = 3; t <= 10; ++t) {
            double back = oracle::maximize(
                [t](double y) { return 2 * t * y - rate_function(y).point->rate; }, y0, 2.0);
            check(std::abs(back - lambda_branch(t)) < 1e-6, "double Legendre t=" + std::to_string(t));
        }
        double prev = 0;
        for (double y = 0.25; y <= 4 + 1e-12; y += 0.05) {
            double w = rate_function(y).point->omega;
            check(w > prev, "omega monotone");
            prev = w;
        }
        double w4 = rate_function(4).point->omega;
        check(w4 > 0.99 && w4 < 1.01, "omega(4)");
        for (double y = 0; y <= small_deviation_limit(); y += 0.005) {
            auto r = rate_function(y);
            check(r.branch == RateBranch::SmallDeviation && r.bounds.lo == 4 * y && r.bounds.hi == 6 * y,
                  "interval at y=" + std::to_string(y));
        }
        for (double z = 0; z <= 3 + 1e-12; z += 0.05) {
            double legendre = oracle::maximize([z](double t) { return 2 * t * z - det_scgf(t); }, 0, 20);
            check(std::abs(legendre - det_rate_function(z)) < 1e-9, "det rate z=" + std::to_string(z));
        }
    });

    criterion(13, "property suites", [](Check& check) {
        for (unsigned n = 0; n <= 10; ++n) {
            KostkaMatrix kos = kostka_matrix(n);
            check(kos.lower_unitriangular(), "Kostka triangular n=" + std::to_string(n));
            Int sum = 0;
            for (const auto& p : partitions_of(n))
                sum += hook_dim(p) * hook_dim(p);
            check(sum == factorial(n), "sum f^2 n=" + std::to_string(n));
        }
        for (unsigned n = 1; n <= 8; ++n)
            for (const auto& mu : partitions_of(n))
                for (const auto& nu : partitions_of(n)) {
                    std::vector<unsigned> r(mu.parts()), c(nu.parts());
                    check(ib_count(mu, nu) == oracle::binary_matrix_count(r, c), "IB " + mu.str() + nu.str());
                    if (n <= 6)
                        check(im_count(mu, nu) == oracle::nonneg_matrix_count(r, c), "IM " + mu.str() + nu.str());
                }
        // listed values assume k >= t and k >= a
        for (unsigned k = 2; k <= 8; ++k)
            for (unsigned t = 2; t <= k; ++t) {
                auto pl = [&](unsigned a) { return plethysm_two_row(k, t, a); };
                check(pl(0) == 1 && pl(1) == 0 && pl(2) == 1, "low two-row " + tag(k, t));
                if (k >= 3)
                    check(pl(3) == (t >= 3 ? 1 : 0), "a=3 " + tag(k, t));
                if (k >= 4)
                    check(pl(4) == (t >= 4 ? 2 : 1), "a=4 " + tag(k, t));
                for (unsigned a = 0; 2 * a <= k * t; ++a)
                    check(pl(a) == plethysm(a ? Partition{k * t - a, a} : Partition{k * t}, k, t),
                          "two-row via plethysm " + tag(k, t));
            }
        for (unsigned k = 1; k <= 12; ++k)
            for (unsigned a = 0; a <= k; ++a)
                check(plethysm_two_row(k, 2, a) == (a % 2 ? 0 : 1), "t=2 parity " + tag(k, a));
        for (auto [k, t] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 3u}, {4u, 3u}, {3u, 4u}, {2u, 5u}, {2u, 6u}}) {
            GridSpec g(k, t);
            TraceTable rc = trace_table(g, TraceKind::RC), rcrc = trace_table(g, TraceKind::RCRC);
            for (const auto& e : rc.entries) {
                bool known_kt = plethysm_known(e.shape, k, t), known_tk = plethysm_known(e.shape, t, k);
                if (!known_kt && !known_tk)
                    continue;
                Int pl = known_kt && known_tk ? std::min(plethysm(e.shape, k, t), plethysm(e.shape, t, k))
                                              : plethysm(e.shape, known_kt ? k : t, known_kt ? t : k);
                Rational sq = e.value * e.value, mid = rcrc.value(e.shape);
                bool ok = pl == 0 ? (e.value == 0 && mid == 0) : (sq / Rational(pl) <= mid && mid <= sq);
                check(ok, "sandwich " + e.shape.str() + " on " + tag(k, t));
            }
        }
    });

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
