#pragma once

#include "permoments/rc_traces.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pm {

// k x k nonnegative integer matrix with every row and column summing to t.
class MagicSquare {
public:
    MagicSquare(unsigned side, std::vector<unsigned> entries); // row-major
    unsigned side() const { return k_; }
    unsigned line_sum() const { return t_; }
    unsigned operator()(unsigned i, unsigned j) const { return entries_[i * k_ + j]; }
    std::span<const unsigned> entries() const { return entries_; }
    auto operator<=>(const MagicSquare&) const = default;

private:
    unsigned k_;
    unsigned t_;
    std::vector<unsigned> entries_;
};

// Row-major lexicographic order.
void for_each_magic_square(unsigned k, unsigned t, const std::function<void(const MagicSquare&)>& visit);
std::vector<MagicSquare> enumerate_magic_squares(unsigned k, unsigned t);
Int count_magic_squares(unsigned k, unsigned t);

// Ordered decompositions into permutation matrices, memoized across calls on one counter.
class BirkhoffCounter {
public:
    explicit BirkhoffCounter(unsigned k);
    Int count(const MagicSquare& a);
    std::size_t cache_size() const { return memo_.size(); }

private:
    Int count_entries(std::vector<unsigned>& cells, unsigned sum);
    unsigned k_;
    std::vector<std::vector<unsigned>> perms_;
    std::unordered_map<std::string, Int> memo_;
};

Int count_birkhoff(const MagicSquare& a);

struct MomentBudget {
    unsigned k3_max_t = 100;
    unsigned k4_max_t = 10;
    unsigned transfer_max_t = 3;     // row transfer handles small t on any side
    unsigned transfer_max_side = 12;
    std::size_t max_classes = 20'000'000;
    bool force = false;
    unsigned threads = 1;
};

// Birkhoff counts for every square of line sum <= t, stored on symmetry classes
// (row permutations, column permutations, transpose).
class BirkhoffLevels {
public:
    BirkhoffLevels(unsigned k, unsigned t, const MomentBudget& budget = {});
    unsigned side() const { return k_; }
    unsigned top() const { return t_; }
    Int count(const MagicSquare& a) const;

    struct ClassEntry {
        MagicSquare representative;
        Int orbit;
        Int birkhoff;
    };
    std::vector<ClassEntry> top_classes() const;
    std::size_t class_count() const;

    using Key = unsigned __int128;

private:
    Key encode(std::span<const unsigned> cells) const;
    void decode(Key key, std::span<unsigned> cells) const;
    Key canonical(std::span<const unsigned> cells) const;
    Int orbit_size(std::span<const unsigned> cells) const;

    struct KeyHash {
        std::size_t operator()(Key k) const noexcept;
    };
    unsigned k_;
    unsigned t_;
    unsigned bits_;
    std::vector<std::vector<unsigned>> perms_;
    std::unordered_map<Key, Int, KeyHash> top_;
};

enum class Ensemble { Gaussian, UnitaryMinor, DeterminantGaussian, DeterminantUnitaryMinor };
std::string to_string(Ensemble e);

enum class MomentMethod { Auto, ClosedForm, MagicSquare, RowTransfer, Expansion };
std::string to_string(MomentMethod m);

struct NamedBound {
    std::string name;
    Rational value;
};

struct MomentReport {
    Ensemble ensemble = Ensemble::Gaussian;
    unsigned d = 0; // unitary ensembles only
    unsigned k = 0;
    unsigned t = 0;
    Rational value;
    std::optional<Rational> normalized_ratio;
    std::vector<NamedBound> bounds;
    std::string method;
};

// k!^{2t} t!^{2k} / (kt)!
Rational gaussian_normalizer(unsigned k, unsigned t);

Int gaussian_moment_closed(unsigned k, unsigned t); // min(k,t) <= 2
Int gaussian_moment_magic(unsigned k, unsigned t, const MomentBudget& budget = {});
Int gaussian_moment_magic(const BirkhoffLevels& levels);
Int gaussian_moment_row_transfer(unsigned k, unsigned t, const MomentBudget& budget = {});
// Sum over lambda of f^lambda tr rho_lambda(RCRC) / (kt)!.
Rational gaussian_moment_from_traces(const TraceTable& rcrc);

MomentReport gaussian_moment_exact(unsigned k, unsigned t, MomentMethod method = MomentMethod::Auto,
                                   const MomentBudget& budget = {});

enum class BoundDepth { FourTerm, ThirteenEighths, Deep };

// Normalized contribution f^lambda tr rho_lambda(RCRC) / (k!^{2t} t!^{2k}) of one expansion term.
Rational expansion_term_two_row(unsigned k, unsigned t, unsigned a);
Rational expansion_term_kt422(unsigned k, unsigned t);

// Lower bound on the moment itself; Deep uses two-row terms a <= max_a plus (kt-4,2,2).
Rational gaussian_moment_lower_bound(unsigned k, unsigned t, BoundDepth depth, unsigned max_a = 10);
Rational four_term_bound_ratio(unsigned k, unsigned t);
// Limit as t grows of the Deep bound ratio at k = 3.
Rational deep_bound_asymptote_k3(unsigned max_a = 10);

// Unitary minors.
Rational unitary_moment_t1(unsigned d, unsigned k);
Rational unitary_moment_t2_closed(unsigned d, unsigned k);
Rational unitary_moment_from_traces(unsigned d, const TraceTable& rcrc);
MomentReport unitary_minor_moment(unsigned d, unsigned k, unsigned t, const PsiGuard& guard = {});
Rational unitary_minor_lower_bound(unsigned d, unsigned k, unsigned t);
double hunter_jones_relative_error(unsigned d, unsigned t, const PsiGuard& guard = {});

Int det_moment_gaussian(unsigned k, unsigned t);
Rational det_moment_unitary_minor(unsigned d, unsigned k, unsigned t);

struct DivergenceReport {
    Rational sum_p1;
    Rational sum_p2;
    Rational divergence_sum; // sum of p1^2 / p2, equals the normalized moment
};
DivergenceReport magic_square_divergence(unsigned k, unsigned t, const MomentBudget& budget = {});

} // namespace pm
