#include "permoments/exact.hpp"

#include <mutex>
#include <vector>

namespace pm {

const Int& factorial(unsigned n)
{
    static std::mutex mu;
    static std::vector<Int> table{Int(1)};
    std::lock_guard lock(mu);
    while (table.size() <= n)
        table.push_back(table.back() * Int(table.size()));
    return table[n];
}

Int binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

Int multinomial(std::span<const unsigned> parts)
{
    unsigned total = 0;
    Int den = 1;
    for (unsigned p : parts) {
        total += p;
        den *= factorial(p);
    }
    return factorial(total) / den;
}

Int ipow(const Int& base, unsigned e)
{
    return boost::multiprecision::pow(base, e);
}

Rational rpow(const Rational& base, int e)
{
    if (e < 0)
        return Rational(1) / rpow(base, -e);
    Rational r = 1, b = base;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1)
            r *= b;
        b *= b;
        u >>= 1;
    }
    return r;
}

Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

static std::string scaled_digits(const Rational& q, int decimals, Rounding mode, bool& negative)
{
    negative = q < 0;
    Rational a = negative ? Rational(-q) : q;
    Int scale = ipow(Int(10), static_cast<unsigned>(decimals));
    Int r = mode == Rounding::HalfUp ? (numerator(a) * scale * 2 + denominator(a)) / (denominator(a) * 2)
                                     : numerator(a) * scale / denominator(a);
    std::string s = r.str();
    if (static_cast<int>(s.size()) <= decimals)
        s.insert(0, decimals + 1 - s.size(), '0');
    return s;
}

std::string fixed_decimals(const Rational& q, int decimals, Rounding mode)
{
    bool neg = false;
    std::string s = scaled_digits(q, decimals, mode, neg);
    if (decimals > 0)
        s.insert(s.size() - decimals, 1, '.');
    if (neg && s.find_first_not_of("0.") != std::string::npos)
        s.insert(0, 1, '-');
    return s;
}

std::string fixed_significant(const Rational& q, int sig, Rounding mode)
{
    if (q == 0)
        return fixed_decimals(q, sig - 1, mode);
    Rational a = q < 0 ? Rational(-q) : q;
    // number of digits before the point
    int intdigits = 0;
    Int ip = numerator(a) / denominator(a);
    if (ip > 0) {
        intdigits = static_cast<int>(ip.str().size());
    } else {
        Rational x = a;
        while (x < 1) {
            x *= 10;
            --intdigits;
        }
        ++intdigits;
    }
    int decimals = sig - intdigits;
    if (decimals < 0)
        decimals = 0;
    std::string s = fixed_decimals(q, decimals, mode);
    // rounding may carry into a new leading digit (9.99.. -> 10.0..)
    std::size_t lead = s.find_first_of("123456789");
    if (lead != std::string::npos && decimals > 0) {
        std::size_t sigcount = 0;
        for (std::size_t i = lead; i < s.size(); ++i)
            sigcount += (s[i] >= '0' && s[i] <= '9');
        if (static_cast<int>(sigcount) > sig)
            s = fixed_decimals(q, decimals - 1, mode);
    }
    return s;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace pm
