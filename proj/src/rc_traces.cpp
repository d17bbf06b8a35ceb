#include "permoments/rc_traces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace pm {

GridSpec::GridSpec(unsigned rows, unsigned cols)
    : k(rows)
    , t(cols)
{
    if (k < 1 || t < 1)
        throw DomainError("grid needs k >= 1 and t >= 1");
}

Int GridSpec::row_group_order() const { return ipow(factorial(t), k); }
Int GridSpec::column_group_order() const { return ipow(factorial(k), t); }

std::string to_string(TraceKind k) { return k == TraceKind::RC ? "RC" : "RCRC"; }

std::string to_string(TraceMethod m)
{
    switch (m) {
    case TraceMethod::ClosedForm:
        return "closed-form";
    case TraceMethod::PolynomialTable:
        return "polynomial-table";
    case TraceMethod::PsiConversion:
        return "psi-conversion";
    case TraceMethod::BruteForce:
        return "brute-force";
    }
    return "unknown";
}

const TraceEntry* TraceTable::find(const Partition& p) const
{
    for (const auto& e : entries)
        if (e.shape == p)
            return &e;
    return nullptr;
}

Rational TraceTable::value(const Partition& p) const
{
    const TraceEntry* e = find(p);
    return e ? e->value : Rational(0);
}

Int omega_weight(const Partition& mu, unsigned r, unsigned s)
{
    if (mu.depth() > r || (mu.depth() && mu[0] > s))
        return 0;
    Int num = factorial(r);
    for (unsigned i = 0; i < r; ++i)
        num *= factorial(mu[i]) * factorial(s - mu[i]);
    Int den = factorial(r - mu.depth());
    for (unsigned v = 1; v <= s; ++v)
        den *= factorial(multiplicity(mu, v));
    return num / den;
}

Int q_sum(unsigned k, unsigned t, unsigned a)
{
    auto rows = partitions_in_rectangle(a, k, t);
    auto cols = partitions_in_rectangle(a, t, k);
    Int acc = 0;
    for (const auto& mu : rows) {
        Int wm = omega_weight(mu, k, t);
        for (const auto& nu : cols) {
            Int ib = ib_count(mu, nu);
            if (ib == 0)
                continue;
            acc += ib * ib * wm * omega_weight(nu, t, k);
        }
    }
    return acc;
}

Int trace_rc_two_row(unsigned k, unsigned t, unsigned a)
{
    if (2 * a > k * t)
        throw DomainError("trace_rc_two_row: need a <= kt/2");
    Int q = q_sum(k, t, a);
    return a == 0 ? q : q - q_sum(k, t, a - 1);
}

Rational trace_rc_t2_closed(unsigned k, unsigned a)
{
    if (a > k)
        throw DomainError("trace_rc_t2_closed: need a <= k");
    if (a % 2)
        return 0;
    Rational v = Rational(ipow(Int(2), k) * factorial(k) * factorial(k));
    v /= Rational(ipow(Int(2), a));
    v *= Rational(binomial(a, a / 2));
    v /= Rational(binomial(k, a / 2));
    return v;
}

namespace {

using Dense = std::vector<std::vector<Int>>;

Dense gram(const std::vector<Partition>& shapes, unsigned r, unsigned s)
{
    std::size_t n = shapes.size();
    KostkaMatrix km(shapes);
    for (const auto& x : shapes)
        for (const auto& y : shapes)
            km(x, y) = kostka(x, y);
    std::vector<Int> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = omega_weight(shapes[i], r, s);
    Dense g(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int acc = 0;
            for (std::size_t m = 0; m < n; ++m)
                acc += km(shapes[i], shapes[m]) * w[m] * km(shapes[j], shapes[m]);
            g[i][j] = acc;
        }
    return g;
}

} // namespace

Int gamma_sum(unsigned k, unsigned t, unsigned a)
{
    // shapes with at most k rows and t columns, and their transposes
    auto a_shapes = partitions_in_rectangle(a, k, t);
    auto b_shapes = partitions_in_rectangle(a, t, k);
    std::size_t n = a_shapes.size();
    std::map<Partition, std::size_t> b_index;
    for (std::size_t i = 0; i < b_shapes.size(); ++i)
        b_index.emplace(b_shapes[i], i);
    std::vector<std::size_t> conj(n);
    for (std::size_t i = 0; i < n; ++i)
        conj[i] = b_index.at(conjugate(a_shapes[i]));

    Dense x = gram(a_shapes, k, t);
    Dense y = gram(b_shapes, t, k);
    Dense m(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int acc = 0;
            for (std::size_t l = 0; l < n; ++l)
                acc += x[i][l] * y[conj[l]][conj[j]];
            m[i][j] = acc;
        }
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            tr += m[i][j] * m[j][i];
    return tr;
}

Int trace_rcrc_two_row(unsigned k, unsigned t, unsigned a)
{
    if (2 * a > k * t)
        throw DomainError("trace_rcrc_two_row: need a <= kt/2");
    Int g = gamma_sum(k, t, a);
    return a == 0 ? g : g - gamma_sum(k, t, a - 1);
}

namespace {

using TypeVec = std::vector<std::uint8_t>; // concatenated per-line symbol counts

struct TypeHash {
    std::size_t operator()(const TypeVec& v) const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto c : v)
            h = (h ^ c) * 1099511628211ull;
        return h;
    }
};

// All line vectors of length `syms` with sum <= cap, lex-descending.
std::vector<std::vector<unsigned>> line_vectors(unsigned syms, unsigned cap)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(syms);
    auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
        if (pos == syms) {
            out.push_back(cur);
            return;
        }
        for (int v = static_cast<int>(left); v >= 0; --v) {
            cur[pos] = static_cast<unsigned>(v);
            self(self, pos + 1, left - static_cast<unsigned>(v));
        }
    };
    rec(rec, 0, cap);
    return out;
}

// Canonical (sorted non-increasing) tuples of `lines` vectors with prescribed totals.
void canonical_types(const std::vector<std::vector<unsigned>>& choices, std::size_t lines,
                     std::vector<unsigned> left, std::size_t min_choice,
                     std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == lines) {
        if (std::all_of(left.begin(), left.end(), [](unsigned v) { return v == 0; }))
            out.push_back(cur);
        return;
    }
    std::size_t remaining = lines - cur.size();
    for (std::size_t c = min_choice; c < choices.size(); ++c) {
        const auto& v = choices[c];
        bool ok = true;
        // later lines are lex-smaller, so only the leading count bounds what remains
        if (!v.empty() && static_cast<unsigned long>(v[0]) * remaining < left[0])
            continue;
        for (std::size_t n = 0; n < v.size(); ++n)
            if (v[n] > left[n]) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        for (std::size_t n = 0; n < v.size(); ++n)
            left[n] -= v[n];
        cur.push_back(c);
        canonical_types(choices, lines, left, c, cur, out);
        cur.pop_back();
        for (std::size_t n = 0; n < v.size(); ++n)
            left[n] += v[n];
    }
}

Int line_weight(const std::uint8_t* counts, unsigned syms, unsigned length)
{
    Int w = 1;
    unsigned used = 0;
    for (unsigned n = 0; n < syms; ++n) {
        w *= factorial(counts[n]);
        used += counts[n];
    }
    return w * factorial(length - used);
}

Int tuple_stabilizer(std::vector<TypeVec> lines)
{
    std::sort(lines.begin(), lines.end());
    Int s = 1;
    std::size_t i = 0;
    while (i < lines.size()) {
        std::size_t j = i;
        while (j < lines.size() && lines[j] == lines[i])
            ++j;
        s *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    return s;
}

// Distinct arrangements of a row multiset over the columns; entry = symbol (0 = filler).
std::vector<std::vector<std::uint8_t>> arrangements(const std::vector<unsigned>& counts, unsigned length)
{
    std::vector<std::uint8_t> seq;
    unsigned used = 0;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        seq.insert(seq.end(), counts[n], static_cast<std::uint8_t>(n + 1));
        used += counts[n];
    }
    seq.insert(seq.end(), length - used, 0);
    std::sort(seq.begin(), seq.end());
    std::vector<std::vector<std::uint8_t>> out;
    do
        out.push_back(seq);
    while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

} // namespace

PsiTraces trace_psi_both(const Partition& shape, GridSpec grid, const PsiGuard& guard)
{
    const unsigned k = grid.k, t = grid.t;
    if (shape.size() != grid.cells())
        throw DomainError("trace_psi: shape " + shape.str() + " does not have kt cells");
    if (shape.depth() > guard.max_depth || grid.cells() > guard.max_cells)
        throw ResourceError("trace_psi: shape " + shape.str() + " on a " + std::to_string(k) + "x" +
                            std::to_string(t) + " grid exceeds the guard (depth <= " +
                            std::to_string(guard.max_depth) + ", kt <= " + std::to_string(guard.max_cells) +
                            ")");
    if (shape.depth() <= 1) {
        Int v = grid.row_group_order() * grid.column_group_order();
        return {v, v * v};
    }
    const unsigned syms = shape.depth() - 1;
    std::vector<unsigned> totals(shape.parts().begin() + 1, shape.parts().end());

    auto row_choices = line_vectors(syms, t);
    std::vector<std::vector<std::size_t>> row_types;
    std::vector<std::size_t> cur;
    canonical_types(row_choices, k, totals, 0, cur, row_types);

    std::map<std::vector<unsigned>, std::vector<std::vector<std::uint8_t>>> arr_cache;
    auto arr = [&](const std::vector<unsigned>& v) -> const std::vector<std::vector<std::uint8_t>>& {
        auto it = arr_cache.find(v);
        if (it == arr_cache.end())
            it = arr_cache.emplace(v, arrangements(v, t)).first;
        return it->second;
    };

    // column types seen so far
    std::unordered_map<TypeVec, std::size_t, TypeHash> w_index;
    std::vector<TypeVec> w_list;
    std::vector<Int> w_weight;
    std::vector<bool> w_canonical;
    std::vector<Int> w_orbit;

    struct Support {
        Int weight; // orbit(u) * d_u
        std::vector<std::pair<std::size_t, Int>> cols;
    };
    std::vector<Support> supports;
    supports.reserve(row_types.size());

    Int rc = 0;
    std::size_t states_seen = 0;
    for (const auto& u : row_types) {
        std::vector<TypeVec> lines;
        Int du = 1;
        for (std::size_t c : u) {
            TypeVec lv(row_choices[c].begin(), row_choices[c].end());
            du *= line_weight(lv.data(), syms, t);
            lines.push_back(std::move(lv));
        }
        Int orbit = factorial(k) / tuple_stabilizer(lines);

        std::unordered_map<TypeVec, Int, TypeHash> layer;
        layer.emplace(TypeVec(static_cast<std::size_t>(t) * syms, 0), Int(1));
        for (std::size_t c : u) {
            const auto& place = arr(row_choices[c]);
            std::unordered_map<TypeVec, Int, TypeHash> next;
            next.reserve(layer.size() * 2);
            for (const auto& [state, count] : layer) {
                for (const auto& p : place) {
                    TypeVec s = state;
                    for (unsigned j = 0; j < t; ++j)
                        if (p[j])
                            ++s[j * syms + p[j] - 1];
                    next[s] += count;
                }
            }
            states_seen += next.size();
            if (states_seen > guard.max_states * 8)
                throw ResourceError("trace_psi: state budget exceeded for shape " + shape.str());
            layer = std::move(next);
        }

        Support sup{orbit * du, {}};
        Int inner = 0;
        for (auto& [w, n] : layer) {
            auto it = w_index.find(w);
            std::size_t idx;
            if (it == w_index.end()) {
                idx = w_list.size();
                w_index.emplace(w, idx);
                w_list.push_back(w);
                Int dw = 1;
                std::vector<TypeVec> cols;
                for (unsigned j = 0; j < t; ++j) {
                    dw *= line_weight(w.data() + j * syms, syms, k);
                    cols.emplace_back(w.begin() + j * syms, w.begin() + (j + 1) * syms);
                }
                w_weight.push_back(dw);
                w_canonical.push_back(std::is_sorted(cols.begin(), cols.end(), std::greater<>()));
                w_orbit.push_back(factorial(t) / tuple_stabilizer(cols));
            } else {
                idx = it->second;
            }
            inner += w_weight[idx] * n * n;
            sup.cols.emplace_back(idx, std::move(n));
        }
        rc += sup.weight * inner;
        supports.push_back(std::move(sup));
    }

    // G(w, w') = sum_u orbit(u) d_u N(u,w) N(u,w'), rows restricted to canonical w
    std::vector<std::size_t> crow(w_list.size(), SIZE_MAX);
    std::size_t ncanon = 0;
    for (std::size_t i = 0; i < w_list.size(); ++i)
        if (w_canonical[i])
            crow[i] = ncanon++;
    if (ncanon * w_list.size() > guard.max_states)
        throw ResourceError("trace_psi: RCRC Gram matrix for shape " + shape.str() + " is too large");
    std::vector<Int> g(ncanon * w_list.size());
    for (const auto& sup : supports)
        for (const auto& [wi, ni] : sup.cols) {
            if (crow[wi] == SIZE_MAX)
                continue;
            Int a = sup.weight * ni;
            Int* row = &g[crow[wi] * w_list.size()];
            for (const auto& [wj, nj] : sup.cols)
                row[wj] += a * nj;
        }
    Int rcrc = 0;
    for (std::size_t i = 0; i < w_list.size(); ++i) {
        if (crow[i] == SIZE_MAX)
            continue;
        const Int* row = &g[crow[i] * w_list.size()];
        Int acc = 0;
        for (std::size_t j = 0; j < w_list.size(); ++j)
            if (row[j] != 0)
                acc += w_weight[j] * row[j] * row[j];
        rcrc += w_orbit[i] * w_weight[i] * acc;
    }
    return {rc, rcrc};
}

Int trace_psi(const Partition& shape, GridSpec grid, const PsiGuard& guard)
{
    return trace_psi_both(shape, grid, guard).rc;
}

namespace {

struct Converted {
    Int rc, rcrc;
};

Converted convert(const Partition& shape, GridSpec grid, const PsiGuard& guard, bool want_rcrc,
                  std::map<Partition, PsiTraces>& cache)
{
    auto upper = partitions_in_rectangle(shape.size(), shape.depth(), shape.size());
    KostkaMatrix km(upper);
    for (const auto& a : upper)
        for (const auto& b : upper)
            km(a, b) = kostka(a, b);
    ShapeMatrix inv = inverse_kostka(km);
    Converted out{0, 0};
    for (const auto& mu : upper) {
        if (mu < shape)
            continue;
        const Int& c = inv(mu, shape);
        if (c == 0)
            continue;
        auto it = cache.find(mu);
        if (it == cache.end()) {
            PsiTraces pt;
            if (want_rcrc) {
                pt = trace_psi_both(mu, grid, guard);
            } else {
                pt.rc = trace_psi(mu, grid, guard);
                pt.rcrc = -1;
            }
            it = cache.emplace(mu, pt).first;
        }
        out.rc += c * it->second.rc;
        out.rcrc += c * it->second.rcrc;
    }
    return out;
}

} // namespace

Int trace_rc_general(const Partition& shape, GridSpec grid, const PsiGuard& guard)
{
    std::map<Partition, PsiTraces> cache;
    return convert(shape, grid, guard, false, cache).rc;
}

Int trace_rcrc_general(const Partition& shape, GridSpec grid, const PsiGuard& guard)
{
    std::map<Partition, PsiTraces> cache;
    return convert(shape, grid, guard, true, cache).rcrc;
}

std::vector<Partition> expansion_shapes(GridSpec grid)
{
    return partitions_in_rectangle(grid.cells(), std::min(grid.k, grid.t), grid.cells());
}

TraceTable trace_table(GridSpec grid, TraceKind kind, const PsiGuard& guard)
{
    TraceTable table{grid, kind, {}};
    std::map<Partition, PsiTraces> cache;
    for (const auto& shape : expansion_shapes(grid)) {
        if (shape.depth() <= 2) {
            Int v = kind == TraceKind::RC ? trace_rc_two_row(grid.k, grid.t, shape[1])
                                          : trace_rcrc_two_row(grid.k, grid.t, shape[1]);
            table.entries.push_back({shape, Rational(v), TraceMethod::ClosedForm});
            continue;
        }
        Converted c = convert(shape, grid, guard, kind == TraceKind::RCRC, cache);
        table.entries.push_back(
            {shape, Rational(kind == TraceKind::RC ? c.rc : c.rcrc), TraceMethod::PsiConversion});
    }
    return table;
}

TraceTable trace_table_two_row(GridSpec grid, TraceKind kind, unsigned max_a)
{
    TraceTable table{grid, kind, {}};
    unsigned n = grid.cells();
    for (unsigned a = 0; a <= max_a && 2 * a <= n; ++a) {
        if (a > 0 && std::min(grid.k, grid.t) < 2)
            break;
        Partition shape = a == 0 ? Partition{n} : Partition{n - a, a};
        Int v = kind == TraceKind::RC ? trace_rc_two_row(grid.k, grid.t, a)
                                      : trace_rcrc_two_row(grid.k, grid.t, a);
        table.entries.push_back({shape, Rational(v), TraceMethod::ClosedForm});
    }
    return table;
}

} // namespace pm
