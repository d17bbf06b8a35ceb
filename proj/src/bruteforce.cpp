#include "permoments/rc_traces.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <unordered_set>

namespace pm {

namespace {

constexpr unsigned kMaxCells = 16;
using Perm = std::array<std::uint8_t, kMaxCells>;

std::uint64_t encode(const Perm& p, unsigned n)
{
    std::uint64_t c = 0;
    for (unsigned i = 0; i < n; ++i)
        c |= static_cast<std::uint64_t>(p[i]) << (4 * i);
    return c;
}

Perm compose(const Perm& a, const Perm& b, unsigned n) // a after b
{
    Perm r{};
    for (unsigned i = 0; i < n; ++i)
        r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& a, unsigned n)
{
    Perm r{};
    for (unsigned i = 0; i < n; ++i)
        r[a[i]] = static_cast<std::uint8_t>(i);
    return r;
}

Partition cycle_type(const Perm& p, unsigned n)
{
    std::array<bool, kMaxCells> seen{};
    std::vector<unsigned> lens;
    for (unsigned i = 0; i < n; ++i) {
        if (seen[i])
            continue;
        unsigned len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end(), std::greater<>());
    return Partition(std::move(lens));
}

// Elements of a product of symmetric groups acting on disjoint cell blocks.
std::vector<Perm> block_group(const std::vector<std::vector<unsigned>>& blocks, unsigned n)
{
    std::vector<Perm> out;
    Perm id{};
    for (unsigned i = 0; i < n; ++i)
        id[i] = static_cast<std::uint8_t>(i);
    out.push_back(id);
    for (const auto& b : blocks) {
        std::vector<unsigned> img = b;
        std::vector<Perm> next;
        do {
            for (const auto& p : out) {
                Perm q = p;
                for (std::size_t i = 0; i < b.size(); ++i)
                    q[b[i]] = static_cast<std::uint8_t>(img[i]);
                next.push_back(q);
            }
        } while (std::next_permutation(img.begin(), img.end()));
        out = std::move(next);
    }
    return out;
}

std::vector<Perm> rc_elements(GridSpec g)
{
    unsigned n = g.cells();
    std::vector<std::vector<unsigned>> rows(g.k), cols(g.t);
    for (unsigned i = 0; i < g.k; ++i)
        for (unsigned j = 0; j < g.t; ++j) {
            rows[i].push_back(i * g.t + j);
            cols[j].push_back(i * g.t + j);
        }
    auto r = block_group(rows, n);
    auto c = block_group(cols, n);
    std::vector<Perm> out;
    out.reserve(r.size() * c.size());
    for (const auto& a : r)
        for (const auto& b : c)
            out.push_back(compose(a, b, n));
    return out;
}

std::vector<std::pair<Partition, Int>> to_sorted(const std::map<Partition, unsigned long long>& m)
{
    std::vector<std::pair<Partition, Int>> v;
    for (auto it = m.rbegin(); it != m.rend(); ++it)
        v.emplace_back(it->first, Int(it->second));
    return v;
}

} // namespace

BruteForceResult trace_bruteforce(GridSpec grid, bool with_classes, const BruteForceGuard& guard)
{
    unsigned n = grid.cells();
    if (n > guard.max_cells_total || n > kMaxCells)
        throw ResourceError("trace_bruteforce: kt=" + std::to_string(n) + " exceeds the enumeration guard " +
                            std::to_string(guard.max_cells_total));
    if (with_classes && n > guard.max_cells_classes)
        throw ResourceError("trace_bruteforce: class tally needs kt <= " +
                            std::to_string(guard.max_cells_classes));
    auto rc = rc_elements(grid);
    std::unordered_set<std::uint64_t> set;
    set.reserve(rc.size() * 2);
    for (const auto& p : rc)
        set.insert(encode(p, n));
    unsigned long long hits = 0;
    std::map<Partition, unsigned long long> classes;
    for (const auto& p : rc) {
        if (set.count(encode(inverse(p, n), n)))
            ++hits;
        if (with_classes)
            ++classes[cycle_type(p, n)];
    }
    BruteForceResult res{Int(hits), {}};
    if (with_classes)
        res.rc_classes = to_sorted(classes);
    return res;
}

std::vector<std::pair<Partition, Int>> rcrc_classes(GridSpec grid, unsigned max_cells)
{
    unsigned n = grid.cells();
    if (n > max_cells)
        throw ResourceError("rcrc_classes: kt=" + std::to_string(n) + " exceeds " + std::to_string(max_cells));
    auto rc = rc_elements(grid);
    std::map<Partition, unsigned long long> classes;
    for (const auto& a : rc)
        for (const auto& b : rc)
            ++classes[cycle_type(compose(a, b, n), n)];
    return to_sorted(classes);
}

} // namespace pm
