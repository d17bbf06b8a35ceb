#include "permoments/moments.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace pm {

std::string to_string(Ensemble e)
{
    switch (e) {
    case Ensemble::Gaussian:
        return "gaussian";
    case Ensemble::UnitaryMinor:
        return "unitary-minor";
    case Ensemble::DeterminantGaussian:
        return "determinant-gaussian";
    case Ensemble::DeterminantUnitaryMinor:
        return "determinant-unitary-minor";
    }
    return "?";
}

std::string to_string(MomentMethod m)
{
    switch (m) {
    case MomentMethod::Auto:
        return "auto";
    case MomentMethod::ClosedForm:
        return "closed-form";
    case MomentMethod::MagicSquare:
        return "magic-square";
    case MomentMethod::RowTransfer:
        return "row-transfer";
    case MomentMethod::Expansion:
        return "expansion";
    }
    return "?";
}

Rational gaussian_normalizer(unsigned k, unsigned t)
{
    return Rational(ipow(factorial(k), 2 * t) * ipow(factorial(t), 2 * k)) / Rational(factorial(k * t));
}

Int gaussian_moment_closed(unsigned k, unsigned t)
{
    if (k == 0 || t == 0)
        return 1;
    if (k == 1)
        return factorial(t);
    if (t == 1)
        return factorial(k);
    if (k == 2)
        return factorial(t) * factorial(t + 1);
    if (t == 2)
        return factorial(k) * factorial(k + 1);
    throw DomainError("gaussian_moment_closed: needs min(k,t) <= 2, got k=" + std::to_string(k) +
                      " t=" + std::to_string(t));
}

namespace {

bool magic_in_budget(unsigned k, unsigned t, const MomentBudget& b)
{
    if (b.force || k <= 2)
        return true;
    if (k == 3)
        return t <= b.k3_max_t;
    if (k == 4)
        return t <= b.k4_max_t;
    return false;
}

bool transfer_in_budget(unsigned k, unsigned t, const MomentBudget& b)
{
    return b.force || (t <= b.transfer_max_t && k <= b.transfer_max_side);
}

std::string budget_text(const MomentBudget& b)
{
    return "magic squares need k <= 2, k = 3 with t <= " + std::to_string(b.k3_max_t) + ", or k = 4 with t <= " +
           std::to_string(b.k4_max_t) + "; row transfer needs t <= " + std::to_string(b.transfer_max_t) +
           " and k <= " + std::to_string(b.transfer_max_side);
}

} // namespace

Int gaussian_moment_magic(const BirkhoffLevels& levels)
{
    Int total = 0;
    for (const auto& c : levels.top_classes()) {
        Int w = c.orbit * c.birkhoff * c.birkhoff;
        for (unsigned e : c.representative.entries())
            w *= factorial(e);
        total += w;
    }
    return total;
}

Int gaussian_moment_magic(unsigned k, unsigned t, const MomentBudget& budget)
{
    if (!magic_in_budget(k, t, budget))
        throw ResourceError("magic-square moment (k=" + std::to_string(k) + ", t=" + std::to_string(t) +
                            ") outside budget: " + budget_text(budget));
    return gaussian_moment_magic(BirkhoffLevels(k, t, budget));
}

namespace {

// Transfer over matrix rows. A column is typed by the set S of tuple slots of the
// first permutation tuple that already used it and the set T for the second tuple;
// |S| = |T| because both tuples place the same row of the magic square.
class RowTransfer {
public:
    RowTransfer(unsigned side, unsigned order) : n_(side), t_(order)
    {
        unsigned full = 1u << t_;
        index_.assign(full * full, -1);
        for (unsigned s = 0; s < full; ++s)
            for (unsigned q = 0; q < full; ++q)
                if (std::popcount(s) == std::popcount(q)) {
                    index_[s * full + q] = static_cast<int>(types_.size());
                    types_.push_back({s, q});
                }
        std::vector<Block> cur;
        patterns(full - 1, full - 1, cur);
        std::vector<unsigned> p(t_);
        std::iota(p.begin(), p.end(), 0u);
        std::vector<std::vector<unsigned>> perms;
        do
            perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        for (const auto& a : perms)
            for (const auto& b : perms) {
                std::vector<unsigned> img(types_.size());
                for (std::size_t z = 0; z < types_.size(); ++z)
                    img[z] = type_of(apply(a, types_[z].first), apply(b, types_[z].second));
                symmetries_.push_back(std::move(img));
            }
    }

    Int run(std::size_t max_states)
    {
        std::string start(types_.size(), '\0');
        start[type_of(0, 0)] = static_cast<char>(n_);
        std::unordered_map<std::string, Int> level{{start, Int(1)}};
        for (unsigned row = 0; row < n_; ++row) {
            std::unordered_map<std::string, Int> next;
            for (const auto& [state, value] : level) {
                std::unordered_map<std::string, std::uint64_t> reach;
                std::string cnt = state;
                std::vector<unsigned> added;
                for (const auto& pat : patterns_)
                    assign(pat, 0, cnt, added, 1, reach);
                for (auto& [to, ways] : reach)
                    next[to] += value * Int(ways);
            }
            if (next.size() > max_states)
                throw ResourceError("row transfer: more than " + std::to_string(max_states) + " states");
            level = std::move(next);
        }
        std::string done(types_.size(), '\0');
        done[type_of((1u << t_) - 1, (1u << t_) - 1)] = static_cast<char>(n_);
        auto it = level.find(done);
        return it == level.end() ? Int(0) : it->second;
    }

private:
    struct Block {
        unsigned p;
        unsigned q;
    };
    struct Pattern {
        std::vector<Block> blocks;
        std::uint64_t weight; // product of block-size factorials
    };

    unsigned apply(const std::vector<unsigned>& perm, unsigned mask) const
    {
        unsigned out = 0;
        for (unsigned s = 0; s < t_; ++s)
            if (mask >> s & 1u)
                out |= 1u << perm[s];
        return out;
    }

    unsigned type_of(unsigned s, unsigned q) const
    {
        return static_cast<unsigned>(index_[s * (1u << t_) + q]);
    }

    void patterns(unsigned p_left, unsigned q_left, std::vector<Block>& cur)
    {
        if (p_left == 0) {
            std::uint64_t w = 1;
            for (const auto& b : cur)
                w *= factorial(std::popcount(b.p)).convert_to<std::uint64_t>();
            patterns_.push_back({cur, w});
            return;
        }
        unsigned low = p_left & (~p_left + 1);
        unsigned rest = p_left ^ low;
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            unsigned pb = low | sub;
            int m = std::popcount(pb);
            for (unsigned qb = q_left;; qb = (qb - 1) & q_left) {
                if (std::popcount(qb) == m) {
                    cur.push_back({pb, qb});
                    patterns(p_left ^ pb, q_left ^ qb, cur);
                    cur.pop_back();
                }
                if (qb == 0)
                    break;
            }
            if (sub == 0)
                break;
        }
    }

    void assign(const Pattern& pat, std::size_t b, std::string& cnt, std::vector<unsigned>& added,
                std::uint64_t ways, std::unordered_map<std::string, std::uint64_t>& reach) const
    {
        if (b == pat.blocks.size()) {
            std::string out = cnt;
            for (unsigned z : added)
                ++out[z];
            reach[canonical(out)] += ways * pat.weight;
            return;
        }
        const Block& blk = pat.blocks[b];
        for (std::size_t z = 0; z < types_.size(); ++z) {
            auto avail = static_cast<unsigned char>(cnt[z]);
            if (avail == 0 || (types_[z].first & blk.p) || (types_[z].second & blk.q))
                continue;
            --cnt[z];
            added.push_back(type_of(types_[z].first | blk.p, types_[z].second | blk.q));
            assign(pat, b + 1, cnt, added, ways * avail, reach);
            added.pop_back();
            ++cnt[z];
        }
    }

    std::string canonical(const std::string& cnt) const
    {
        std::string best = cnt, img(cnt.size(), '\0');
        for (const auto& sym : symmetries_) {
            for (std::size_t z = 0; z < cnt.size(); ++z)
                img[sym[z]] = cnt[z];
            if (img < best)
                best = img;
        }
        return best;
    }

    unsigned n_;
    unsigned t_;
    std::vector<int> index_;
    std::vector<std::pair<unsigned, unsigned>> types_;
    std::vector<Pattern> patterns_;
    std::vector<std::vector<unsigned>> symmetries_;
};

} // namespace

Int gaussian_moment_row_transfer(unsigned k, unsigned t, const MomentBudget& budget)
{
    if (k == 0 || t == 0)
        return 1;
    if (!transfer_in_budget(k, t, budget))
        throw ResourceError("row-transfer moment (k=" + std::to_string(k) + ", t=" + std::to_string(t) +
                            ") outside budget: " + budget_text(budget));
    if (t > 6 || k > 255)
        throw ResourceError("row transfer supports t <= 6 and k <= 255");
    RowTransfer rt(k, t);
    return rt.run(budget.max_classes);
}

Rational gaussian_moment_from_traces(const TraceTable& rcrc)
{
    if (rcrc.kind != TraceKind::RCRC)
        throw DomainError("gaussian_moment_from_traces: needs an RCRC table");
    Rational total = 0;
    for (const auto& e : rcrc.entries)
        total += Rational(hook_dim(e.shape)) * e.value;
    return total / Rational(factorial(rcrc.grid.cells()));
}

Rational expansion_term_two_row(unsigned k, unsigned t, unsigned a)
{
    unsigned n = k * t;
    if (2 * a > n)
        throw DomainError("expansion_term_two_row: a exceeds kt/2");
    Partition shape = a ? Partition({n - a, a}) : Partition({n});
    Rational base = Rational(ipow(factorial(k), 2 * t) * ipow(factorial(t), 2 * k));
    return Rational(hook_dim(shape)) * Rational(trace_rcrc_two_row(k, t, a)) / base;
}

Rational expansion_term_kt422(unsigned k, unsigned t)
{
    if (k < 3 || t < 3)
        throw DomainError("expansion_term_kt422: needs k, t >= 3");
    unsigned n = k * t;
    Rational rc = trace_rc_kt422_closed(k, t);
    Rational base = Rational(ipow(factorial(k), 2 * t) * ipow(factorial(t), 2 * k));
    // plethysm multiplicity is 1 here, so the RCRC trace is the square of the RC trace
    return Rational(hook_dim(Partition({n - 4, 2, 2}))) * rc * rc / base;
}

Rational four_term_bound_ratio(unsigned k, unsigned t)
{
    Rational x = Rational(k) * Rational(t);
    return Rational(3, 2) + Rational(7, 6) / x - Rational(16) / (x * x) + Rational(40, 3) / (x * x * x);
}

Rational gaussian_moment_lower_bound(unsigned k, unsigned t, BoundDepth depth, unsigned max_a)
{
    switch (depth) {
    case BoundDepth::FourTerm:
        if (k < 3 || t < 3)
            throw DomainError("four-term bound requires k >= 3 and t >= 3");
        return gaussian_normalizer(k, t) * four_term_bound_ratio(k, t);
    case BoundDepth::ThirteenEighths:
        if (k < 4 || t < 4)
            throw DomainError("13/8 bound requires k >= 4 and t >= 4");
        return gaussian_normalizer(k, t) * Rational(13, 8);
    case BoundDepth::Deep: {
        if (k < 3 || t < 3)
            throw DomainError("deep truncation bound requires k >= 3 and t >= 3");
        Rational r = expansion_term_kt422(k, t);
        for (unsigned a = 0; a <= max_a && 2 * a <= k * t; ++a)
            r += expansion_term_two_row(k, t, a);
        return gaussian_normalizer(k, t) * r;
    }
    }
    throw DomainError("unknown bound depth");
}

Rational deep_bound_asymptote_k3(unsigned max_a)
{
    // with k = 3 fixed the t = 3 polynomial tables apply with the roles of k and t swapped
    Rational total = 0;
    for (unsigned a = 0; a <= max_a; ++a) {
        if (a == 1)
            continue;
        auto deg_p = t3_rcrc_degree(a);
        if (!deg_p)
            throw UnsupportedError("deep_bound_asymptote_k3: RCRC polynomial known only for a <= 10");
        auto [deg_q, lc_q] = t3_denominator_leading(a);
        unsigned num_deg = a + *deg_p;
        if (num_deg > 2 * deg_q)
            throw DomainError("deep_bound_asymptote_k3: term " + std::to_string(a) + " diverges");
        if (num_deg < 2 * deg_q)
            continue;
        total += rpow(Rational(3), static_cast<int>(a)) / Rational(factorial(a)) / (lc_q * lc_q);
    }
    // (kt-4,2,2) term tends to (k-2)^2 / (12 (k-1)^2)
    total += Rational(1, 48);
    return total;
}

MomentReport gaussian_moment_exact(unsigned k, unsigned t, MomentMethod method, const MomentBudget& budget)
{
    if (k == 0)
        throw DomainError("gaussian_moment_exact: k must be positive");
    MomentReport r;
    r.ensemble = Ensemble::Gaussian;
    r.k = k;
    r.t = t;
    if (method == MomentMethod::Auto) {
        if (std::min(k, t) <= 2)
            method = MomentMethod::ClosedForm;
        else if (k <= 4 && magic_in_budget(k, t, budget))
            method = MomentMethod::MagicSquare;
        else if (transfer_in_budget(k, t, budget))
            method = MomentMethod::RowTransfer;
        else if (t <= 4 && magic_in_budget(t, k, budget)) {
            r.value = Rational(gaussian_moment_magic(t, k, budget));
            r.method = "magic-square (dual)";
        } else
            throw ResourceError("gaussian moment (k=" + std::to_string(k) + ", t=" + std::to_string(t) +
                                ") outside budget: " + budget_text(budget));
    }
    if (r.method.empty()) {
        switch (method) {
        case MomentMethod::ClosedForm:
            r.value = Rational(gaussian_moment_closed(k, t));
            break;
        case MomentMethod::MagicSquare:
            r.value = Rational(gaussian_moment_magic(k, t, budget));
            break;
        case MomentMethod::RowTransfer:
            r.value = Rational(gaussian_moment_row_transfer(k, t, budget));
            break;
        case MomentMethod::Expansion:
            r.value = gaussian_moment_from_traces(trace_table(GridSpec(k, t), TraceKind::RCRC));
            break;
        case MomentMethod::Auto:
            break;
        }
        r.method = to_string(method);
    }
    r.normalized_ratio = r.value / gaussian_normalizer(k, t);
    r.bounds.push_back({"determinant", Rational(det_moment_gaussian(k, t))});
    if (k >= 3 && t >= 3) {
        r.bounds.push_back({"four-term", gaussian_moment_lower_bound(k, t, BoundDepth::FourTerm)});
        r.bounds.push_back({"deep", gaussian_moment_lower_bound(k, t, BoundDepth::Deep)});
    }
    if (k >= 4 && t >= 4)
        r.bounds.push_back({"thirteen-eighths", gaussian_moment_lower_bound(k, t, BoundDepth::ThirteenEighths)});
    return r;
}

Int det_moment_gaussian(unsigned k, unsigned t)
{
    Int p = 1;
    for (unsigned i = 1; i <= k; ++i)
        for (unsigned j = 1; j <= t; ++j)
            p *= i + j - 1;
    return p;
}

Rational det_moment_unitary_minor(unsigned d, unsigned k, unsigned t)
{
    if (k > d)
        throw DomainError("det_moment_unitary_minor: minor size k=" + std::to_string(k) + " exceeds d=" +
                          std::to_string(d));
    Rational p = 1;
    for (unsigned i = 1; i <= k; ++i)
        for (unsigned j = 1; j <= t; ++j)
            p *= Rational(i + j - 1, d - k + i + j - 1);
    return p;
}

DivergenceReport magic_square_divergence(unsigned k, unsigned t, const MomentBudget& budget)
{
    if (!magic_in_budget(k, t, budget))
        throw ResourceError("magic_square_divergence (k=" + std::to_string(k) + ", t=" + std::to_string(t) +
                            ") outside budget: " + budget_text(budget));
    BirkhoffLevels levels(k, t, budget);
    Rational perm_total = Rational(ipow(factorial(k), t));
    std::vector<unsigned> parts(k, t);
    Rational grid_multinomial = Rational(multinomial(parts));
    DivergenceReport out;
    for (const auto& c : levels.top_classes()) {
        Rational p1 = Rational(c.birkhoff) / perm_total;
        Rational p2 = 1;
        const auto& a = c.representative;
        for (unsigned i = 0; i < k; ++i) {
            std::vector<unsigned> row(k);
            for (unsigned j = 0; j < k; ++j)
                row[j] = a(i, j);
            p2 *= Rational(multinomial(row));
        }
        p2 /= grid_multinomial;
        Rational orbit(c.orbit);
        out.sum_p1 += orbit * p1;
        out.sum_p2 += orbit * p2;
        out.divergence_sum += orbit * p1 * p1 / p2;
    }
    return out;
}

} // namespace pm
