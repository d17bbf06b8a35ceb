#include "permoments/moments.hpp"

namespace pm {

namespace {

void require_minor(unsigned d, unsigned k, const char* who)
{
    if (k == 0 || k > d)
        throw DomainError(std::string(who) + ": need 1 <= k <= d, got k=" + std::to_string(k) +
                          " d=" + std::to_string(d));
}

Int binomial_int(const Int& n, unsigned r)
{
    Int num = 1;
    for (unsigned i = 0; i < r; ++i)
        num *= n - i;
    return num / factorial(r);
}

} // namespace

Rational unitary_moment_t1(unsigned d, unsigned k)
{
    require_minor(d, k, "unitary_moment_t1");
    return Rational(1) / Rational(binomial(k + d - 1, k));
}

Rational unitary_moment_t2_closed(unsigned d, unsigned k)
{
    require_minor(d, k, "unitary_moment_t2_closed");
    if (d == 1)
        return 1;
    Rational sum = 0;
    for (unsigned a = 0; 2 * a <= k; ++a) {
        Rational term = rpow(Rational(4), static_cast<int>(k - 2 * a));
        term *= Rational(2 * k - 4 * a + 1, 2 * k - 2 * a + 1);
        term *= Rational(binomial(2 * a, a)) / Rational(binomial(2 * k - 2 * a, k - a));
        term *= Rational(factorial(k) * factorial(k));
        term /= Rational(factorial(2 * a + d - 2) * factorial(2 * k - 2 * a + d - 1));
        sum += term;
    }
    return Rational(factorial(d - 1) * factorial(d - 2)) * sum;
}

Rational unitary_moment_from_traces(unsigned d, const TraceTable& rcrc)
{
    if (rcrc.kind != TraceKind::RCRC)
        throw DomainError("unitary_moment_from_traces: needs an RCRC table");
    Rational total = 0;
    Rational n_fact = Rational(factorial(rcrc.grid.cells()));
    for (const auto& e : rcrc.entries) {
        if (e.value == 0)
            continue;
        Int wd = weyl_dim(e.shape, d);
        if (wd == 0)
            throw DomainError("unitary_moment_from_traces: shape " + e.shape.str() + " has depth above d=" +
                              std::to_string(d));
        Rational f = Rational(hook_dim(e.shape)) / n_fact;
        total += f * f * e.value / Rational(wd);
    }
    return total;
}

MomentReport unitary_minor_moment(unsigned d, unsigned k, unsigned t, const PsiGuard& guard)
{
    require_minor(d, k, "unitary_minor_moment");
    MomentReport r;
    r.ensemble = Ensemble::UnitaryMinor;
    r.d = d;
    r.k = k;
    r.t = t;
    if (t == 0) {
        r.value = 1;
        r.method = "closed-form";
    } else if (t == 1) {
        r.value = unitary_moment_t1(d, k);
        r.method = "closed-form";
    } else if (t == 2) {
        r.value = unitary_moment_t2_closed(d, k);
        r.method = "closed-form-t2";
    } else {
        GridSpec grid(k, t);
        if (grid.cells() > guard.max_cells || std::min(k, t) > guard.max_depth)
            throw UnsupportedError("unitary_minor_moment: available for t <= 2 (closed forms) or kt <= " +
                                   std::to_string(guard.max_cells) + " with min(k,t) <= " +
                                   std::to_string(guard.max_depth) + " (full trace tables); got d=" +
                                   std::to_string(d) + " k=" + std::to_string(k) + " t=" + std::to_string(t));
        r.value = unitary_moment_from_traces(d, trace_table(grid, TraceKind::RCRC, guard));
        r.method = "expansion";
    }
    r.bounds.push_back({"inverse-binomial", unitary_minor_lower_bound(d, k, t)});
    return r;
}

Rational unitary_minor_lower_bound(unsigned d, unsigned k, unsigned t)
{
    require_minor(d, k, "unitary_minor_lower_bound");
    unsigned a = std::min(k, t), b = std::max(k, t);
    Int inner = binomial(d + b - 1, b);
    return Rational(1) / Rational(binomial_int(inner + a - 1, a));
}

double hunter_jones_relative_error(unsigned d, unsigned t, const PsiGuard& guard)
{
    Rational exact = unitary_minor_moment(d, d, t, guard).value;
    Rational conj = Rational(factorial(t)) / rpow(Rational(binomial(2 * d - 1, d)), static_cast<int>(t));
    return to_double(Rational(1) - conj / exact);
}

} // namespace pm
