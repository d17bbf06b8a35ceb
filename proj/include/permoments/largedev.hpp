#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

// Floating point only; nothing here touches the exact arithmetic.
namespace pm::ldev {

struct Interval {
    double lo = 0;
    double hi = 0;
    bool is_point() const { return lo == hi; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

double digamma(double x); // x > 0

// Exact branches return a point interval; (2,3) returns [0, log(4/3)].
Interval lambda_scgf(double t);
double lambda_branch(double t);       // t >= 3
double lambda_derivative(double t);   // t >= 3
double branch_boundary();             // y where t* = 3

double solve_tstar(double y); // throws UnsupportedError below branch_boundary()

struct RateFunctionPoint {
    double y = 0;
    double t_star = 0;
    double rate = 0;
    double omega = 0;
};

enum class RateBranch { Computed, SmallDeviation, Gap };

struct RateResult {
    RateBranch branch = RateBranch::Computed;
    double y = 0;
    std::optional<RateFunctionPoint> point; // Computed only
    Interval bounds;                        // point branch: [rate, rate]
};

double small_deviation_limit(); // log(4/3)/6
RateResult rate_function(double y);

double det_scgf(double t);       // t(t-1)/2, in units of log k
double det_rate_function(double z);

std::vector<RateFunctionPoint> omega_curve(std::span<const double> ys);
void write_omega_csv(std::span<const RateFunctionPoint> rows, std::ostream& out);
void write_lambda_csv(std::span<const double> ts, std::ostream& out);

} // namespace pm::ldev
