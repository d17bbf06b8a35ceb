#include "permoments/errors.hpp"
#include "permoments/largedev.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pm::ldev;

namespace {

const double euler_gamma = 0.57721566490153286061;

double rate_value(double y)
{
    return rate_function(y).point->rate;
}

} // namespace

TEST_CASE("digamma at integers")
{
    CHECK(std::abs(digamma(1) + euler_gamma) < 1e-13);
    double h = 0;
    for (int n = 1; n <= 20; ++n) {
        h += 1.0 / n;
        CHECK(std::abs(digamma(n + 1) - (h - euler_gamma)) < 1e-13);
    }
    CHECK(std::abs(digamma(0.5) - (-euler_gamma - 2 * std::log(2.0))) < 1e-13);
    CHECK_THROWS_AS(digamma(0), pm::DomainError);
}

TEST_CASE("digamma matches a difference quotient of lgamma")
{
    for (double x : {0.3, 1.7, 4.2, 9.9, 10.1, 55.0}) {
        double h = 1e-5;
        double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2 * h);
        CHECK(digamma(x) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("cumulant generating function")
{
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
        Interval v = lambda_scgf(t);
        CHECK(v.is_point());
        CHECK(v.lo == 0);
    }
    Interval gap = lambda_scgf(2.5);
    CHECK_FALSE(gap.is_point());
    CHECK(gap.lo == 0);
    CHECK(gap.hi == doctest::Approx(std::log(4.0 / 3.0)));
    CHECK(std::abs(lambda_scgf(3).lo - std::log(4.0 / 3.0)) < 1e-12);
    CHECK(std::abs(lambda_branch(3) - std::log(4.0 / 3.0)) < 1e-12);
    CHECK(lambda_scgf(4).lo == doctest::Approx(2 * std::log(24.0) - 4 * std::log(4.0)).epsilon(1e-14));
    CHECK(lambda_scgf(4).lo == doctest::Approx(0.8109302162).epsilon(1e-9));
    CHECK_THROWS_AS(lambda_scgf(-1), pm::DomainError);
    CHECK_THROWS_AS(lambda_branch(2.9), pm::DomainError);
}

TEST_CASE("lambda is convex and its derivative is consistent")
{
    double h = 0.01;
    for (double t = 3; t <= 40; t += 0.25) {
        double second = lambda_branch(t + 2 * h) - 2 * lambda_branch(t + h) + lambda_branch(t);
        CHECK(second >= -1e-9);
        double fd = (lambda_branch(t + h) - lambda_branch(t + h - 2e-5)) / 2e-5;
        CHECK(lambda_derivative(t + h - 1e-5) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("branch boundary")
{
    double y0 = branch_boundary();
    CHECK(y0 == doctest::Approx((2 * (11.0 / 6 - euler_gamma) - std::log(3.0) - 1) / 2).epsilon(1e-13));
    CHECK(y0 > 0.20);
    CHECK(y0 < 0.21);
    CHECK(solve_tstar(y0) == doctest::Approx(3).epsilon(1e-9));
    CHECK_THROWS_AS(solve_tstar(y0 - 1e-3), pm::UnsupportedError);
    CHECK(small_deviation_limit() == doctest::Approx(std::log(4.0 / 3.0) / 6));
    CHECK(small_deviation_limit() < y0);
}

TEST_CASE("optimizer")
{
    CHECK(solve_tstar(5) / std::exp(11.0) > 0.95);
    CHECK(solve_tstar(5) / std::exp(11.0) < 1.05);
    double prev = 0;
    for (double y = 0.25; y <= 6; y += 0.25) {
        double t = solve_tstar(y);
        CHECK(t > prev);
        CHECK(lambda_derivative(t) == doctest::Approx(2 * y).epsilon(1e-10));
        prev = t;
    }
}

TEST_CASE("rate function on the computed branch")
{
    for (double y : {3.0, 4.0}) {
        auto r = rate_function(y);
        REQUIRE(r.point);
        CHECK(r.branch == RateBranch::Computed);
        CHECK(r.point->omega > 0.99);
        CHECK(r.point->omega < 1.01);
        CHECK(r.bounds.is_point());
    }
    std::vector<double> grid{0.25, 0.5, 1, 2, 4};
    auto curve = omega_curve(grid);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].omega > curve[i - 1].omega);
    for (double y = 0.25; y < 4; y += 0.05)
        CHECK(rate_function(y + 0.05).point->omega > rate_function(y).point->omega);
    CHECK(omega_curve({}).empty());
    std::vector<double> low{0.1};
    CHECK_THROWS_AS(omega_curve(low), pm::UnsupportedError);
}

TEST_CASE("Fenchel equality at the optimizer")
{
    for (double t : {3.5, 5.0, 8.0, 20.0}) {
        double y = lambda_derivative(t) / 2;
        CHECK(std::abs(rate_value(y) + lambda_branch(t) - 2 * t * y) < 1e-9);
    }
}

TEST_CASE("rate function is convex")
{
    double h = 0.02;
    for (double y = 0.22; y < 3; y += 0.05) {
        double second = rate_value(y + 2 * h) - 2 * rate_value(y + h) + rate_value(y);
        CHECK(second >= -1e-8);
    }
}

TEST_CASE("double Legendre transform recovers lambda")
{
    double lo = branch_boundary();
    for (int t = 3; t <= 10; ++t) {
        double back = oracle::maximize([t](double y) { return 2 * t * y - rate_value(y); }, lo, 2.0);
        CAPTURE(t);
        CHECK(std::abs(back - lambda_branch(t)) < 1e-6);
    }
}

TEST_CASE("small deviations and the gap")
{
    auto r = rate_function(0.03);
    CHECK(r.branch == RateBranch::SmallDeviation);
    CHECK_FALSE(r.point);
    CHECK(r.bounds.lo == doctest::Approx(0.12));
    CHECK(r.bounds.hi == doctest::Approx(0.18));
    auto z = rate_function(0);
    CHECK(z.bounds.lo == 0);
    CHECK(z.bounds.hi == 0);
    auto g = rate_function(0.1);
    CHECK(g.branch == RateBranch::Gap);
    CHECK(g.bounds.lo <= g.bounds.hi);
    CHECK(g.bounds.hi == doctest::Approx(0.6));
    CHECK_THROWS_AS(rate_function(-0.1), pm::DomainError);
}

TEST_CASE("determinant comparison")
{
    CHECK(det_scgf(1) == 0);
    CHECK(det_scgf(0) == 0);
    CHECK(det_rate_function(0) == doctest::Approx(0.125));
    for (double z = 0; z <= 3; z += 0.05) {
        double legendre = oracle::maximize([z](double t) { return 2 * t * z - det_scgf(t); }, 0, 20);
        CHECK(std::abs(legendre - det_rate_function(z)) < 1e-9);
        CHECK(det_rate_function(z) == doctest::Approx(2 * (z + 0.25) * (z + 0.25)));
    }
    CHECK_THROWS_AS(det_rate_function(-1), pm::DomainError);
}

TEST_CASE("CSV emitters")
{
    std::vector<double> ys{0.5, 1};
    std::ostringstream out;
    write_omega_csv(omega_curve(ys), out);
    std::string s = out.str();
    CHECK(s.rfind("y,t_star,rate,omega\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);
    std::ostringstream lam;
    std::vector<double> ts{2, 2.5, 3};
    write_lambda_csv(ts, lam);
    CHECK(lam.str() == "t,lambda_lo,lambda_hi\n2,0,0\n2.5,0,0.287682072452\n3,0.287682072452,0.287682072452\n");
    std::ostringstream empty;
    write_omega_csv({}, empty);
    CHECK(empty.str() == "y,t_star,rate,omega\n");
}
