#include "permoments/largedev.hpp"
#include "permoments/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace pm::ldev {

namespace {

const double log43 = std::log(4.0 / 3.0);

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

double digamma(double x)
{
    if (!(x > 0))
        throw DomainError("digamma: argument must be positive");
    double shift = 0;
    while (x < 10) {
        shift -= 1 / x;
        x += 1;
    }
    double inv2 = 1 / (x * x);
    // Bernoulli tail B_{2n} / (2n x^{2n}), n = 1..7
    double tail = inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
    return shift + std::log(x) - 0.5 / x - tail;
}

double lambda_branch(double t)
{
    if (t < 3)
        throw DomainError("lambda_branch: needs t >= 3, got " + num(t));
    return 2 * std::lgamma(t + 1) - t * std::log(t);
}

double lambda_derivative(double t)
{
    if (t < 3)
        throw DomainError("lambda_derivative: needs t >= 3, got " + num(t));
    return 2 * digamma(t + 1) - std::log(t) - 1;
}

Interval lambda_scgf(double t)
{
    if (!(t >= 0))
        throw DomainError("lambda_scgf: needs t >= 0, got " + num(t));
    if (t <= 2)
        return {0, 0};
    if (t < 3)
        return {0, log43};
    if (t == 3)
        return {log43, log43};
    double v = lambda_branch(t);
    return {v, v};
}

double branch_boundary()
{
    return lambda_derivative(3) / 2;
}

double solve_tstar(double y)
{
    double target = 2 * y;
    double lo = 3;
    if (!(target >= lambda_derivative(lo)))
        throw UnsupportedError("solve_tstar: y=" + num(y) + " is below the computed branch (needs y >= " +
                               num(branch_boundary()) + ")");
    double hi = 6;
    while (lambda_derivative(hi) < target) {
        lo = hi;
        hi *= 2;
        if (!std::isfinite(hi))
            throw ResourceError("solve_tstar: no bracket for y=" + num(y));
    }
    while (hi - lo > 1e-12 * std::max(1.0, lo)) {
        double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi)
            break;
        if (lambda_derivative(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return lo + (hi - lo) / 2;
}

double small_deviation_limit()
{
    return log43 / 6;
}

RateResult rate_function(double y)
{
    if (!(y >= 0))
        throw DomainError("rate_function: needs y >= 0, got " + num(y));
    RateResult r;
    r.y = y;
    if (y <= small_deviation_limit()) {
        r.branch = RateBranch::SmallDeviation;
        r.bounds = {4 * y, 6 * y};
        return r;
    }
    if (y < branch_boundary()) {
        // only the crude envelope: t = 2 and t = 3 give the lower side, lambda >= 0 the upper side
        r.branch = RateBranch::Gap;
        r.bounds = {std::max(4 * y, 6 * y - log43), 6 * y};
        return r;
    }
    RateFunctionPoint p;
    p.y = y;
    p.t_star = solve_tstar(y);
    p.rate = 2 * y * p.t_star - lambda_branch(p.t_star);
    p.omega = p.rate / std::exp(2 * y + 1);
    r.branch = RateBranch::Computed;
    r.point = p;
    r.bounds = {p.rate, p.rate};
    return r;
}

double det_scgf(double t)
{
    return t * (t - 1) / 2;
}

double det_rate_function(double z)
{
    if (!(z >= 0))
        throw DomainError("det_rate_function: needs z >= 0, got " + num(z));
    return 2 * (z + 0.25) * (z + 0.25);
}

std::vector<RateFunctionPoint> omega_curve(std::span<const double> ys)
{
    std::vector<RateFunctionPoint> rows;
    rows.reserve(ys.size());
    for (double y : ys) {
        RateResult r = rate_function(y);
        if (!r.point)
            throw UnsupportedError("omega_curve: y=" + num(y) + " is outside the computed branch (needs y >= " +
                                   num(branch_boundary()) + ")");
        rows.push_back(*r.point);
    }
    return rows;
}

void write_omega_csv(std::span<const RateFunctionPoint> rows, std::ostream& out)
{
    out << "y,t_star,rate,omega\n";
    for (const auto& p : rows)
        out << num(p.y) << ',' << num(p.t_star) << ',' << num(p.rate) << ',' << num(p.omega) << '\n';
}

void write_lambda_csv(std::span<const double> ts, std::ostream& out)
{
    out << "t,lambda_lo,lambda_hi\n";
    for (double t : ts) {
        Interval v = lambda_scgf(t);
        out << num(t) << ',' << num(v.lo) << ',' << num(v.hi) << '\n';
    }
}

} // namespace pm::ldev
