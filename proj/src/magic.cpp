#include "permoments/moments.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

namespace pm {

namespace {

std::vector<std::vector<unsigned>> all_permutations(unsigned k)
{
    std::vector<unsigned> p(k);
    std::iota(p.begin(), p.end(), 0u);
    std::vector<std::vector<unsigned>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

unsigned line_sum_of(unsigned k, std::span<const unsigned> cells)
{
    unsigned s = 0;
    for (unsigned j = 0; j < k; ++j)
        s += cells[j];
    return s;
}

struct SquareWalker {
    unsigned k;
    unsigned t;
    const std::function<void(const MagicSquare&)>& visit;
    std::vector<unsigned> cells;
    std::vector<unsigned> col_left;

    void row(unsigned i)
    {
        if (i + 1 == k) {
            for (unsigned j = 0; j < k; ++j)
                cells[i * k + j] = col_left[j];
            visit(MagicSquare(k, cells));
            return;
        }
        entry(i, 0, t);
    }

    void entry(unsigned i, unsigned j, unsigned row_left)
    {
        if (j + 1 == k) {
            if (row_left > col_left[j])
                return;
            cells[i * k + j] = row_left;
            col_left[j] -= row_left;
            row(i + 1);
            col_left[j] += row_left;
            return;
        }
        // the remaining columns must be able to absorb what this row still needs
        unsigned later = 0;
        for (unsigned m = j + 1; m < k; ++m)
            later += col_left[m];
        unsigned lo = row_left > later ? row_left - later : 0;
        unsigned hi = std::min(row_left, col_left[j]);
        for (unsigned v = lo; v <= hi; ++v) {
            cells[i * k + j] = v;
            col_left[j] -= v;
            entry(i, j + 1, row_left - v);
            col_left[j] += v;
        }
    }
};

} // namespace

MagicSquare::MagicSquare(unsigned side, std::vector<unsigned> entries)
    : k_(side), t_(0), entries_(std::move(entries))
{
    if (k_ == 0)
        throw DomainError("MagicSquare: side must be positive");
    if (entries_.size() != std::size_t(k_) * k_)
        throw DomainError("MagicSquare: expected " + std::to_string(k_ * k_) + " entries");
    t_ = line_sum_of(k_, entries_);
    for (unsigned i = 0; i < k_; ++i) {
        unsigned r = 0, c = 0;
        for (unsigned j = 0; j < k_; ++j) {
            r += entries_[i * k_ + j];
            c += entries_[j * k_ + i];
        }
        if (r != t_ || c != t_)
            throw DomainError("MagicSquare: line sums differ from " + std::to_string(t_));
    }
}

void for_each_magic_square(unsigned k, unsigned t, const std::function<void(const MagicSquare&)>& visit)
{
    if (k == 0)
        throw DomainError("for_each_magic_square: side must be positive");
    SquareWalker w{k, t, visit, std::vector<unsigned>(k * k), std::vector<unsigned>(k, t)};
    w.row(0);
}

std::vector<MagicSquare> enumerate_magic_squares(unsigned k, unsigned t)
{
    std::vector<MagicSquare> out;
    for_each_magic_square(k, t, [&](const MagicSquare& a) { out.push_back(a); });
    return out;
}

Int count_magic_squares(unsigned k, unsigned t)
{
    Int n = 0;
    for_each_magic_square(k, t, [&](const MagicSquare&) { ++n; });
    return n;
}

BirkhoffCounter::BirkhoffCounter(unsigned k) : k_(k), perms_(all_permutations(k)) {}

Int BirkhoffCounter::count(const MagicSquare& a)
{
    if (a.side() != k_)
        throw DomainError("BirkhoffCounter: square side " + std::to_string(a.side()) + " != " +
                          std::to_string(k_));
    std::vector<unsigned> cells(a.entries().begin(), a.entries().end());
    return count_entries(cells, a.line_sum());
}

Int BirkhoffCounter::count_entries(std::vector<unsigned>& cells, unsigned sum)
{
    if (sum == 0)
        return 1;
    std::string key(cells.size() * sizeof(unsigned), '\0');
    std::memcpy(key.data(), cells.data(), key.size());
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;
    Int total = 0;
    for (const auto& p : perms_) {
        bool fits = true;
        for (unsigned i = 0; i < k_ && fits; ++i)
            fits = cells[i * k_ + p[i]] > 0;
        if (!fits)
            continue;
        for (unsigned i = 0; i < k_; ++i)
            --cells[i * k_ + p[i]];
        total += count_entries(cells, sum - 1);
        for (unsigned i = 0; i < k_; ++i)
            ++cells[i * k_ + p[i]];
    }
    memo_.emplace(std::move(key), total);
    return total;
}

Int count_birkhoff(const MagicSquare& a)
{
    BirkhoffCounter c(a.side());
    return c.count(a);
}

std::size_t BirkhoffLevels::KeyHash::operator()(Key k) const noexcept
{
    auto lo = static_cast<std::uint64_t>(k);
    auto hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x632be59bd9b4e019ULL + (lo << 6) + (lo >> 2));
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
}

BirkhoffLevels::BirkhoffLevels(unsigned k, unsigned t, const MomentBudget& budget)
    : k_(k), t_(t), bits_(std::min(32u, 128u / (k * k))), perms_(all_permutations(k))
{
    if (k == 0)
        throw DomainError("BirkhoffLevels: side must be positive");
    if (bits_ == 0 || (bits_ < 32 && t >= (1u << bits_)))
        throw ResourceError("BirkhoffLevels: line sum " + std::to_string(t) + " too large for side " +
                            std::to_string(k));
    std::vector<unsigned> zero(k * k, 0);
    std::unordered_map<Key, Int, KeyHash> prev;
    prev.emplace(canonical(zero), Int(1));
    std::vector<unsigned> cells(k * k), work(k * k);
    unsigned threads = std::max(1u, budget.threads);

    for (unsigned level = 1; level <= t; ++level) {
        std::vector<Key> keys;
        {
            std::unordered_set<Key, KeyHash> seen;
            for (const auto& [key, f] : prev) {
                decode(key, cells);
                for (const auto& p : perms_) {
                    work = cells;
                    for (unsigned i = 0; i < k; ++i)
                        ++work[i * k + p[i]];
                    Key c = canonical(work);
                    if (seen.insert(c).second)
                        keys.push_back(c);
                }
                if (keys.size() > budget.max_classes)
                    throw ResourceError("BirkhoffLevels: more than " + std::to_string(budget.max_classes) +
                                        " classes at line sum " + std::to_string(level));
            }
        }
        std::sort(keys.begin(), keys.end());
        std::vector<Int> values(keys.size());
        auto work_range = [&](std::size_t begin, std::size_t end) {
            std::vector<unsigned> a(k * k), b(k * k);
            for (std::size_t n = begin; n < end; ++n) {
                decode(keys[n], a);
                Int f = 0;
                for (const auto& p : perms_) {
                    bool fits = true;
                    for (unsigned i = 0; i < k && fits; ++i)
                        fits = a[i * k + p[i]] > 0;
                    if (!fits)
                        continue;
                    b = a;
                    for (unsigned i = 0; i < k; ++i)
                        --b[i * k + p[i]];
                    f += prev.at(canonical(b));
                }
                values[n] = std::move(f);
            }
        };
        if (threads == 1 || keys.size() < 1024) {
            work_range(0, keys.size());
        } else {
            std::vector<std::jthread> pool;
            std::size_t chunk = (keys.size() + threads - 1) / threads;
            for (unsigned w = 0; w < threads; ++w) {
                std::size_t begin = w * chunk, end = std::min(keys.size(), begin + chunk);
                if (begin < end)
                    pool.emplace_back(work_range, begin, end);
            }
        }
        std::unordered_map<Key, Int, KeyHash> next;
        next.reserve(keys.size());
        for (std::size_t n = 0; n < keys.size(); ++n)
            next.emplace(keys[n], std::move(values[n]));
        prev = std::move(next);
    }
    top_ = std::move(prev);
}

BirkhoffLevels::Key BirkhoffLevels::encode(std::span<const unsigned> cells) const
{
    Key key = 0;
    for (std::size_t n = cells.size(); n-- > 0;)
        key = (key << bits_) | Key(cells[n]);
    return key;
}

void BirkhoffLevels::decode(Key key, std::span<unsigned> cells) const
{
    Key mask = (Key(1) << bits_) - 1;
    for (auto& c : cells) {
        c = static_cast<unsigned>(key & mask);
        key >>= bits_;
    }
}

BirkhoffLevels::Key BirkhoffLevels::canonical(std::span<const unsigned> cells) const
{
    unsigned k = k_;
    Key best = ~Key(0);
    std::vector<unsigned> m(k * k), rows(k * k), out(k * k);
    std::vector<unsigned> order(k);
    for (int flip = 0; flip < 2; ++flip) {
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j)
                m[i * k + j] = flip ? cells[j * k + i] : cells[i * k + j];
        for (const auto& p : perms_) {
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j)
                    rows[i * k + j] = m[p[i] * k + j];
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(), [&](unsigned x, unsigned y) {
                for (unsigned i = 0; i < k; ++i)
                    if (rows[i * k + x] != rows[i * k + y])
                        return rows[i * k + x] > rows[i * k + y];
                return false;
            });
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j)
                    out[i * k + j] = rows[i * k + order[j]];
            best = std::min(best, encode(out));
        }
    }
    return best;
}

Int BirkhoffLevels::orbit_size(std::span<const unsigned> cells) const
{
    unsigned k = k_;
    std::set<Key> images;
    std::vector<unsigned> m(k * k), out(k * k);
    for (int flip = 0; flip < 2; ++flip) {
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j)
                m[i * k + j] = flip ? cells[j * k + i] : cells[i * k + j];
        for (const auto& p : perms_)
            for (const auto& q : perms_) {
                for (unsigned i = 0; i < k; ++i)
                    for (unsigned j = 0; j < k; ++j)
                        out[i * k + j] = m[p[i] * k + q[j]];
                images.insert(encode(out));
            }
    }
    return Int(images.size());
}

Int BirkhoffLevels::count(const MagicSquare& a) const
{
    if (a.side() != k_ || a.line_sum() != t_)
        throw DomainError("BirkhoffLevels::count: square is not of side " + std::to_string(k_) +
                          " and line sum " + std::to_string(t_));
    return top_.at(canonical(a.entries()));
}

std::vector<BirkhoffLevels::ClassEntry> BirkhoffLevels::top_classes() const
{
    const auto& top = top_;
    std::vector<Key> keys;
    keys.reserve(top.size());
    for (const auto& kv : top)
        keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    std::vector<ClassEntry> out;
    out.reserve(keys.size());
    std::vector<unsigned> cells(k_ * k_);
    for (Key key : keys) {
        decode(key, cells);
        out.push_back({MagicSquare(k_, cells), orbit_size(cells), top.at(key)});
    }
    return out;
}

std::size_t BirkhoffLevels::class_count() const
{
    return top_.size();
}

} // namespace pm
