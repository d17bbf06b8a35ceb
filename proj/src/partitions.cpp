#include "permoments/partitions.hpp"

#include <algorithm>
#include <numeric>

namespace pm {

Partition::Partition(std::initializer_list<unsigned> parts)
    : Partition(std::vector<unsigned>(parts))
{
}

Partition::Partition(std::vector<unsigned> parts)
    : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0)
            throw DomainError("partition parts must be positive");
        if (i && parts_[i] > parts_[i - 1])
            throw DomainError("partition parts must be non-increasing");
    }
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0u);
}

std::string Partition::str() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

Partition conjugate(const Partition& p)
{
    std::vector<unsigned> c;
    if (p.empty())
        return {};
    c.resize(p[0]);
    for (unsigned j = 0; j < p[0]; ++j) {
        unsigned n = 0;
        while (n < p.depth() && p[n] > j)
            ++n;
        c[j] = n;
    }
    return Partition(std::move(c));
}

std::strong_ordering lex_compare(const Partition& mu, const Partition& nu)
{
    if (mu.size() != nu.size())
        throw DomainError("lex_compare: partitions of different sizes " + mu.str() + " and " + nu.str());
    return mu <=> nu;
}

bool dominates(const Partition& mu, const Partition& nu)
{
    unsigned a = 0, b = 0;
    std::size_t len = std::max(mu.depth(), nu.depth());
    for (std::size_t i = 0; i < len; ++i) {
        a += mu[i];
        b += nu[i];
        if (a < b)
            return false;
    }
    return a == b;
}

unsigned multiplicity(const Partition& p, unsigned v)
{
    return static_cast<unsigned>(std::count(p.parts().begin(), p.parts().end(), v));
}

Int hook_product(const Partition& p)
{
    Partition c = conjugate(p);
    Int prod = 1;
    for (unsigned i = 0; i < p.depth(); ++i)
        for (unsigned j = 0; j < p[i]; ++j)
            prod *= (p[i] - j - 1) + (c[j] - i - 1) + 1;
    return prod;
}

Int hook_dim(const Partition& p)
{
    return factorial(p.size()) / hook_product(p);
}

Int weyl_dim(const Partition& p, unsigned d)
{
    if (p.depth() > d)
        return 0;
    // content form: prod over cells (d + j - i) / hook
    Int num = 1;
    for (unsigned i = 0; i < p.depth(); ++i)
        for (unsigned j = 0; j < p[i]; ++j)
            num *= Int(d) + j - i;
    return num / hook_product(p);
}

static void rect_rec(unsigned left, unsigned rows, unsigned cap, std::vector<unsigned>& cur,
                     std::vector<Partition>& out)
{
    if (left == 0) {
        out.emplace_back(cur);
        return;
    }
    if (rows == 0)
        return;
    for (unsigned v = std::min(left, cap); v >= 1; --v) {
        if (static_cast<unsigned long>(v) * rows < left)
            break;
        cur.push_back(v);
        rect_rec(left - v, rows - 1, v, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_in_rectangle(unsigned n, unsigned rows, unsigned cols)
{
    std::vector<Partition> out;
    std::vector<unsigned> cur;
    rect_rec(n, rows, cols, cur, out);
    return out;
}

std::vector<Partition> partitions_of(unsigned n)
{
    return partitions_in_rectangle(n, n, n);
}

} // namespace pm
