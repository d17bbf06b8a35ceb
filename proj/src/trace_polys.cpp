#include "permoments/rc_traces.hpp"

#include <array>
#include <vector>

namespace pm {

namespace {

struct Term {
    long num;
    long den;
};

// Coefficients from the constant term upwards.
using Poly = std::vector<Term>;

Rational eval(const Poly& p, const Rational& x)
{
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        acc = acc * x + Rational(p[i].num) / Rational(p[i].den);
    return acc;
}

const std::vector<Poly>& t3_rc_table()
{
    static const std::vector<Poly> table = {
        {{1, 1}},
        {{0, 1}},
        {{1, 1}},
        {{1, 1}},
        {{1, 1}},
        {{1, 1}},
        {{-92, 9}, {35, 9}, {1, 1}},
        {{1, 1}},
        {{-274, 9}, {77, 9}, {1, 1}},
        {{-9, 1}, {4, 9}, {1, 1}},
        {{-72, 1}, {143, 9}, {1, 1}},
        {{-214, 9}, {25, 9}, {1, 1}},
        {{72640, 81}, {3310, 27}, {-15421, 81}, {194, 9}, {1, 1}},
        {{-467, 9}, {58, 9}, {1, 1}},
        {{127480, 27}, {-45346, 81}, {-23149, 81}, {326, 9}, {1, 1}},
        {{17384, 81}, {83170, 243}, {-30775, 243}, {130, 27}, {1, 1}},
        {{471884, 27}, {-244160, 81}, {-28777, 81}, {500, 9}, {1, 1}},
        {{482308, 243}, {2743, 9}, {-52615, 243}, {331, 27}, {1, 1}},
        {{87973760, 729}, {-592053832, 2187}, {56013238, 729}, {-5416259, 2187}, {-248621, 243}, {641, 9}, {1, 1}},
        {{649976, 81}, {-79210, 243}, {-78295, 243}, {598, 27}, {1, 1}},
    };
    return table;
}

const std::vector<Poly>& t3_rcrc_table()
{
    static const std::vector<Poly> table = {
        {{1, 1}},
        {{0, 1}},
        {{1, 1}},
        {{1, 1}},
        {{1, 1}},
        {{1, 1}},
        {{8464, 81}, {-7880, 81}, {1729, 81}, {-10, 9}, {1, 1}},
        {{1, 1}},
        {{75076, 81}, {-45976, 81}, {6037, 81}, {14, 9}, {1, 1}},
        {{355, 3}, {-688, 9}, {1582, 81}, {-16, 3}, {1, 1}},
        {{5184, 1}, {-21488, 9}, {18865, 81}, {62, 9}, {1, 1}},
    };
    return table;
}

} // namespace

Rational t3_denominator(unsigned a, unsigned k)
{
    if (a == 1)
        throw DomainError("t3_denominator: undefined for a = 1");
    unsigned h = a / 2;
    Rational q = Rational(binomial(k, h) * factorial(h)) * rpow(Rational(3), static_cast<int>(2 * a / 3));
    if (a % 2 == 0) {
        unsigned m = 2 * (a / 6);
        q *= Rational(binomial(k, m) * factorial(m)) / Rational(factorial(a / 2));
        q *= rpow(Rational(3), -static_cast<int>(a / 6));
    } else {
        unsigned m = 2 * ((a + 4) / 6) - 1;
        q *= Rational(binomial(k, m) * factorial(m)) / Rational(factorial((a + 3) / 2));
        // floor(a/6 + 2/3) = floor((a+4)/6)
        q *= rpow(Rational(3), 2 - static_cast<int>((a + 4) / 6)) / 2;
    }
    return q;
}

std::pair<unsigned, Rational> t3_denominator_leading(unsigned a)
{
    if (a == 1)
        throw DomainError("t3_denominator_leading: undefined for a = 1");
    unsigned h = a / 2;
    Rational lc = rpow(Rational(3), static_cast<int>(2 * a / 3));
    unsigned m;
    if (a % 2 == 0) {
        m = 2 * (a / 6);
        lc /= Rational(factorial(a / 2));
        lc *= rpow(Rational(3), -static_cast<int>(a / 6));
    } else {
        m = 2 * ((a + 4) / 6) - 1;
        lc /= Rational(factorial((a + 3) / 2));
        lc *= rpow(Rational(3), 2 - static_cast<int>((a + 4) / 6)) / 2;
    }
    return {h + m, lc};
}

std::optional<unsigned> t3_rcrc_degree(unsigned a)
{
    const auto& t = t3_rcrc_table();
    if (a >= t.size())
        return std::nullopt;
    return static_cast<unsigned>(t[a].size() - 1);
}

Rational t3_rc_polynomial(unsigned a, const Rational& k)
{
    const auto& t = t3_rc_table();
    if (a >= t.size())
        throw UnsupportedError("t=3 RC polynomial tabulated only for a <= 19");
    return eval(t[a], k);
}

std::optional<Rational> t3_rcrc_polynomial(unsigned a, const Rational& k)
{
    const auto& t = t3_rcrc_table();
    if (a >= t.size())
        return std::nullopt;
    return eval(t[a], k);
}

Rational trace_rc_t3_table(unsigned k, unsigned a)
{
    if (a == 1)
        return 0;
    Rational pre = Rational(ipow(Int(6), k) * ipow(factorial(k), 3));
    return pre / t3_denominator(a, k) * t3_rc_polynomial(a, Rational(k));
}

std::optional<Rational> trace_rcrc_t3_table(unsigned k, unsigned a)
{
    auto p = t3_rcrc_polynomial(a, Rational(k));
    if (!p)
        return std::nullopt;
    if (a == 1)
        return Rational(0);
    Rational q = t3_denominator(a, k);
    Rational pre = Rational(ipow(factorial(k), 6) * ipow(Int(6), 2 * k));
    return pre / (q * q) * *p;
}

Rational general_prefactor(unsigned k, unsigned t, unsigned a)
{
    Rational v = Rational(ipow(factorial(k), t) * ipow(factorial(t), k));
    if (a % 2)
        v *= 4;
    for (unsigned i = 0; i < a; ++i) {
        int e = 1 - static_cast<int>(a / (i + 1));
        if (e != 0)
            v *= rpow(Rational(Int(k) - i) * Rational(Int(t) - i), e);
    }
    return v;
}

std::optional<Rational> general_rc_polynomial(unsigned a, const Rational& k, const Rational& t)
{
    switch (a) {
    case 0:
    case 2:
    case 3:
        return Rational(1);
    case 1:
        return Rational(0);
    case 4:
        return k * k * t * t + k * k * t + k * t * t + 25 * k * t - 30 * k - 30 * t + 36;
    case 5:
        return k * k * t * t + 5 * k * k * t + 5 * k * t * t + 49 * k * t - 84 * k - 84 * t + 144;
    default:
        return std::nullopt;
    }
}

Rational trace_rc_kt422_closed(unsigned k, unsigned t)
{
    if (k < 3 || t < 3)
        throw DomainError("trace_rc_kt422_closed: needs k, t >= 3");
    Rational kk(k), tt(t);
    Rational base = Rational(ipow(factorial(k), t) * ipow(factorial(t), k));
    return base * (kk - 2) * (tt - 2) / ((kk - 1) * kk * kk * (tt - 1) * tt * tt);
}

std::span<const Monomial> general_leading_terms(TraceKind kind, unsigned a)
{
    static const std::vector<std::vector<Monomial>> rc = {
        {{1, 0, 0}},
        {},
        {{1, 0, 0}},
        {{1, 0, 0}},
        {{1, 2, 2}, {1, 2, 1}, {1, 1, 2}, {25, 1, 1}, {-30, 1, 0}, {-30, 0, 1}, {36, 0, 0}},
        {{1, 2, 2}, {5, 2, 1}, {5, 1, 2}, {49, 1, 1}, {-84, 1, 0}, {-84, 0, 1}, {144, 0, 0}},
        {{1, 5, 5}, {2, 5, 4}, {2, 4, 5}, {-5, 5, 3}, {20, 4, 4}, {-5, 3, 5}},
        {{1, 5, 5}, {10, 5, 4}, {10, 4, 5}, {11, 5, 3}, {28, 4, 4}, {11, 3, 5}},
        {{1, 8, 8}, {4, 8, 7}, {4, 7, 8}, {-16, 8, 6}, {-4, 7, 7}, {-16, 6, 8}},
        {{1, 9, 9}, {14, 9, 8}, {14, 8, 9}, {12, 9, 7}, {-4, 8, 8}, {12, 7, 9}},
        {{1, 12, 12}, {5, 12, 11}, {5, 11, 12}, {-46, 12, 10}, {-43, 11, 11}, {-46, 10, 12}},
    };
    static const std::vector<std::vector<Monomial>> rcrc = {
        {{1, 0, 0}},
        {},
        {{1, 0, 0}},
        {{1, 0, 0}},
        {{1, 4, 4}, {2, 4, 3}, {2, 3, 4}, {1, 4, 2}, {-20, 3, 3}, {1, 2, 4}},
        {{1, 4, 4}, {10, 4, 3}, {10, 3, 4}, {25, 4, 2}, {-140, 3, 3}, {25, 2, 4}},
        {{1, 10, 10}, {4, 10, 9}, {4, 9, 10}, {-6, 10, 8}, {-56, 9, 9}, {-6, 8, 10}},
        {{1, 10, 10}, {20, 10, 9}, {20, 9, 10}, {122, 10, 8}, {-104, 9, 9}, {122, 8, 10}},
    };
    const auto& table = kind == TraceKind::RC ? rc : rcrc;
    if (a >= table.size())
        throw UnsupportedError("no tabulated leading terms for a = " + std::to_string(a));
    return table[a];
}

} // namespace pm
