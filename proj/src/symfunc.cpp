#include "permoments/symfunc.hpp"

#include <algorithm>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

namespace pm {

namespace {

struct KostkaKey {
    std::vector<unsigned> shape, content;
    bool operator==(const KostkaKey&) const = default;
};

struct KostkaKeyHash {
    std::size_t operator()(const KostkaKey& k) const
    {
        std::size_t h = 1469598103934665603ull;
        for (unsigned v : k.shape)
            h = (h ^ v) * 1099511628211ull;
        h = (h ^ 0xff) * 1099511628211ull;
        for (unsigned v : k.content)
            h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

class KostkaCache {
public:
    bool find(const KostkaKey& key, Int& out)
    {
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end())
            return false;
        out = it->second;
        return true;
    }
    void insert(KostkaKey key, const Int& v)
    {
        std::unique_lock lock(mu_);
        map_.emplace(std::move(key), v);
    }

private:
    std::shared_mutex mu_;
    std::unordered_map<KostkaKey, Int, KostkaKeyHash> map_;
};

KostkaCache& kostka_cache()
{
    static KostkaCache cache;
    return cache;
}

Int kostka_rec(const std::vector<unsigned>& shape, const std::vector<unsigned>& content);

// Remove a horizontal strip of `left` cells from the rows of `shape`, recursing on the
// remaining content.
void strip(const std::vector<unsigned>& shape, std::size_t row, unsigned left,
           std::vector<unsigned>& inner, const std::vector<unsigned>& rest, Int& acc)
{
    if (row == shape.size()) {
        if (left == 0) {
            std::vector<unsigned> nu = inner;
            while (!nu.empty() && nu.back() == 0)
                nu.pop_back();
            acc += kostka_rec(nu, rest);
        }
        return;
    }
    unsigned below = row + 1 < shape.size() ? shape[row + 1] : 0;
    unsigned maxtake = std::min(left, shape[row] - below);
    for (unsigned take = 0; take <= maxtake; ++take) {
        inner[row] = shape[row] - take;
        strip(shape, row + 1, left - take, inner, rest, acc);
    }
}

Int kostka_rec(const std::vector<unsigned>& shape, const std::vector<unsigned>& content)
{
    if (content.empty())
        return shape.empty() ? 1 : 0;
    if (shape.size() > content.size())
        return 0;
    if (shape.size() <= 1 || content.size() == 1)
        return 1;
    KostkaKey key{shape, content};
    Int cached;
    if (kostka_cache().find(key, cached))
        return cached;
    std::vector<unsigned> rest(content.begin(), content.end() - 1);
    std::vector<unsigned> inner(shape.size());
    Int acc = 0;
    strip(shape, 0, content.back(), inner, rest, acc);
    kostka_cache().insert(std::move(key), acc);
    return acc;
}

} // namespace

Int kostka(const Partition& shape, const Partition& content)
{
    if (shape.size() != content.size())
        throw DomainError("kostka: shape " + shape.str() + " and content " + content.str() +
                          " have different sizes");
    if (!dominates(shape, content))
        return 0;
    return kostka_rec(shape.parts(), content.parts());
}

ShapeMatrix::ShapeMatrix(std::vector<Partition> shapes)
    : shapes_(std::move(shapes))
    , cells_(shapes_.size() * shapes_.size())
{
    for (std::size_t i = 0; i < shapes_.size(); ++i)
        index_.emplace(shapes_[i], i);
}

std::size_t ShapeMatrix::at(const Partition& p) const
{
    auto it = index_.find(p);
    if (it == index_.end())
        throw DomainError("shape " + p.str() + " is not indexed by this matrix");
    return it->second;
}

const Int& ShapeMatrix::operator()(const Partition& row, const Partition& col) const
{
    return cells_[at(row) * dim() + at(col)];
}

Int& ShapeMatrix::operator()(const Partition& row, const Partition& col)
{
    return cells_[at(row) * dim() + at(col)];
}

ShapeMatrix ShapeMatrix::operator*(const ShapeMatrix& o) const
{
    if (shapes_ != o.shapes_)
        throw DomainError("matrix product over different shape sets");
    ShapeMatrix r(shapes_);
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) {
            const Int& a = cells_[i * n + m];
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                r.cells_[i * n + j] += a * o.cells_[m * n + j];
        }
    return r;
}

bool ShapeMatrix::is_identity() const
{
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (cells_[i * n + j] != (i == j ? 1 : 0))
                return false;
    return true;
}

// Triangular in the lex order of the shapes: (mu, nu) vanishes when mu < nu.
bool ShapeMatrix::lower_unitriangular() const
{
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Int& v = cells_[i * n + j];
            if (i == j && v != 1)
                return false;
            if (shapes_[i] < shapes_[j] && v != 0)
                return false;
        }
    return true;
}

KostkaMatrix kostka_matrix(unsigned n)
{
    return kostka_matrix(n, Rectangle{n, n});
}

KostkaMatrix kostka_matrix(unsigned n, Rectangle box)
{
    KostkaMatrix m(partitions_in_rectangle(n, box.rows, box.cols));
    for (const auto& a : m.shapes())
        for (const auto& b : m.shapes())
            m(a, b) = kostka(a, b);
    return m;
}

ShapeMatrix inverse_kostka(const KostkaMatrix& k)
{
    const auto& s = k.shapes();
    std::size_t n = s.size();
    if (!k.lower_unitriangular())
        throw DomainError("inverse_kostka: matrix is not unit triangular");
    ShapeMatrix inv(s);
    // s is lex-descending, so (s[i], s[j]) can be nonzero only for i <= j.
    for (std::size_t j = 0; j < n; ++j) {
        inv(s[j], s[j]) = 1;
        for (std::size_t i = j; i-- > 0;) {
            Int acc = 0;
            for (std::size_t m = i + 1; m <= j; ++m)
                acc += k(s[i], s[m]) * inv(s[m], s[j]);
            inv(s[i], s[j]) = -acc;
        }
    }
    return inv;
}

Int ib_count(const Partition& row_sums, const Partition& col_sums)
{
    if (row_sums.size() != col_sums.size())
        throw DomainError("ib_count: margins " + row_sums.str() + " and " + col_sums.str() +
                          " have different totals");
    Int acc = 0;
    unsigned n = row_sums.size();
    for (const auto& lam : partitions_in_rectangle(n, col_sums.depth(), row_sums.depth())) {
        if (!dominates(lam, col_sums))
            continue;
        Partition conj = conjugate(lam);
        if (!dominates(conj, row_sums))
            continue;
        acc += kostka(conj, row_sums) * kostka(lam, col_sums);
    }
    return acc;
}

Int im_count(const Partition& row_sums, const Partition& col_sums)
{
    if (row_sums.size() != col_sums.size())
        throw DomainError("im_count: margins " + row_sums.str() + " and " + col_sums.str() +
                          " have different totals");
    Int acc = 0;
    unsigned n = row_sums.size();
    for (const auto& lam : partitions_in_rectangle(n, std::min(row_sums.depth(), col_sums.depth()), n)) {
        if (!dominates(lam, row_sums) || !dominates(lam, col_sums))
            continue;
        acc += kostka(lam, row_sums) * kostka(lam, col_sums);
    }
    return acc;
}

RowColType::RowColType(std::vector<std::vector<unsigned>> lines)
    : lines_(std::move(lines))
{
    if (!lines_.empty())
        symbols_ = static_cast<unsigned>(lines_.front().size());
    for (const auto& l : lines_)
        if (l.size() != symbols_)
            throw DomainError("row/column type vectors must all have the same length");
}

std::vector<unsigned> RowColType::totals() const
{
    std::vector<unsigned> t(symbols_, 0);
    for (const auto& l : lines_)
        for (unsigned n = 0; n < symbols_; ++n)
            t[n] += l[n];
    return t;
}

RowColType RowColType::canonical() const
{
    RowColType c = *this;
    std::sort(c.lines_.begin(), c.lines_.end(), std::greater<>());
    return c;
}

bool RowColType::is_canonical() const
{
    return std::is_sorted(lines_.begin(), lines_.end(), std::greater<>());
}

Int RowColType::stabilizer() const
{
    RowColType c = canonical();
    Int s = 1;
    std::size_t i = 0;
    while (i < c.lines_.size()) {
        std::size_t j = i;
        while (j < c.lines_.size() && c.lines_[j] == c.lines_[i])
            ++j;
        s *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    return s;
}

namespace {

// Column capacities are tracked per symbol including the implicit zero symbol.
struct TypedCounter {
    std::size_t nrows, ncols, nsym;
    std::vector<std::vector<unsigned>> row_need;
    std::map<std::pair<std::size_t, std::vector<unsigned>>, Int> memo;

    Int rows_from(std::size_t row, std::vector<unsigned>& col)
    {
        if (row == nrows)
            return 1;
        auto key = std::make_pair(row, col);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        std::vector<unsigned> need = row_need[row];
        Int acc = 0;
        place(row, 0, need, col, acc);
        memo.emplace(std::move(key), acc);
        return acc;
    }

    void place(std::size_t row, std::size_t c, std::vector<unsigned>& need, std::vector<unsigned>& col,
               Int& acc)
    {
        if (c == ncols) {
            acc += rows_from(row + 1, col);
            return;
        }
        for (std::size_t s = 0; s < nsym; ++s) {
            unsigned& have = col[c * nsym + s];
            if (need[s] == 0 || have == 0)
                continue;
            --need[s];
            --have;
            place(row, c + 1, need, col, acc);
            ++need[s];
            ++have;
        }
    }
};

} // namespace

Int ib_count_typed(const RowColType& rows, const RowColType& cols, unsigned symbols, unsigned area_cap)
{
    std::size_t r = rows.lines(), c = cols.lines();
    if (r * c > area_cap)
        throw ResourceError("ib_count_typed: matrix area " + std::to_string(r * c) + " exceeds cap " +
                            std::to_string(area_cap));
    if ((rows.lines() && rows.symbols() != symbols) || (cols.lines() && cols.symbols() != symbols))
        return 0;
    if (rows.totals() != cols.totals())
        return 0;
    TypedCounter tc{r, c, symbols + 1, {}, {}};
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<unsigned> need(symbols + 1);
        unsigned used = 0;
        for (unsigned n = 0; n < symbols; ++n) {
            need[n + 1] = rows[i][n];
            used += rows[i][n];
        }
        if (used > c)
            return 0;
        need[0] = static_cast<unsigned>(c) - used;
        tc.row_need.push_back(std::move(need));
    }
    std::vector<unsigned> col(c * (symbols + 1));
    for (std::size_t j = 0; j < c; ++j) {
        unsigned used = 0;
        for (unsigned n = 0; n < symbols; ++n) {
            col[j * (symbols + 1) + n + 1] = cols[j][n];
            used += cols[j][n];
        }
        if (used > r)
            return 0;
        col[j * (symbols + 1)] = static_cast<unsigned>(r) - used;
    }
    return tc.rows_from(0, col);
}

Int box_count(unsigned rows, unsigned cols, unsigned a)
{
    return Int(partitions_in_rectangle(a, rows, cols).size());
}

Int plethysm_two_row(unsigned k, unsigned t, unsigned a)
{
    if (2 * a > k * t)
        throw DomainError("plethysm_two_row: need a <= kt/2, got a=" + std::to_string(a));
    if (a == 0)
        return 1;
    return box_count(k, t, a) - box_count(k, t, a - 1);
}

Int plethysm_special(const Partition& shape, unsigned k, unsigned t)
{
    unsigned n = k * t;
    if (shape.size() != n)
        throw DomainError("plethysm_special: shape " + shape.str() + " is not a partition of kt=" +
                          std::to_string(n));
    if (t == 2 && shape.depth() == 2)
        return shape[1] % 2 == 0 ? 1 : 0;
    if (shape.depth() == 3) {
        unsigned b = shape[1], c = shape[2];
        if (b == 1 && c == 1)
            return 0;
        if (b == 2 && c == 1 && t >= 3)
            return 0;
        if (b == 3 && c == 1 && t >= 4)
            return 0;
        if (b == 2 && c == 2 && k >= 3 && t >= 3)
            return 1;
        if (b == 3 && c == 2 && k >= 4 && t >= 3)
            return 1;
    }
    throw UnsupportedError("plethysm coefficient of " + shape.str() + " for (k,t)=(" + std::to_string(k) +
                           "," + std::to_string(t) + ") is outside the tabulated family");
}

bool plethysm_known(const Partition& shape, unsigned k, unsigned t)
{
    if (shape.depth() <= 2)
        return true;
    try {
        (void)plethysm_special(shape, k, t);
        return true;
    } catch (const UnsupportedError&) {
        return false;
    }
}

Int plethysm(const Partition& shape, unsigned k, unsigned t)
{
    if (shape.size() != k * t)
        throw DomainError("plethysm: shape " + shape.str() + " is not a partition of kt");
    if (shape.depth() <= 2)
        return plethysm_two_row(k, t, shape[1]);
    return plethysm_special(shape, k, t);
}

} // namespace pm
