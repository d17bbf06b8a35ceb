#pragma once

#include "permoments/symfunc.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pm {

struct GridSpec {
    unsigned k = 1; // rows
    unsigned t = 1; // columns

    GridSpec() = default;
    GridSpec(unsigned rows, unsigned cols);
    unsigned cells() const { return k * t; }
    Int row_group_order() const;    // (t!)^k
    Int column_group_order() const; // (k!)^t
    GridSpec transposed() const { return {t, k}; }
};

enum class TraceKind { RC, RCRC };
enum class TraceMethod { ClosedForm, PolynomialTable, PsiConversion, BruteForce };

std::string to_string(TraceKind k);
std::string to_string(TraceMethod m);

struct TraceEntry {
    Partition shape;
    Rational value;
    TraceMethod method;
};

struct TraceTable {
    GridSpec grid;
    TraceKind kind = TraceKind::RC;
    std::vector<TraceEntry> entries; // lex-descending shapes

    const TraceEntry* find(const Partition& p) const;
    Rational value(const Partition& p) const; // missing shapes read as zero
};

struct PsiGuard {
    unsigned max_depth = 4;
    unsigned max_cells = 24;
    std::size_t max_states = 4'000'000;
};

// Diagonal weight Omega^{r,s}_mu for mu inside an r x s box.
Int omega_weight(const Partition& mu, unsigned r, unsigned s);

Int q_sum(unsigned k, unsigned t, unsigned a);
Int trace_rc_two_row(unsigned k, unsigned t, unsigned a);
Rational trace_rc_t2_closed(unsigned k, unsigned a);

Int gamma_sum(unsigned k, unsigned t, unsigned a);
Int trace_rcrc_two_row(unsigned k, unsigned t, unsigned a);

// Permutation-module traces against RC and RCRC.
struct PsiTraces {
    Int rc;
    Int rcrc;
};
PsiTraces trace_psi_both(const Partition& shape, GridSpec grid, const PsiGuard& guard = {});
Int trace_psi(const Partition& shape, GridSpec grid, const PsiGuard& guard = {});

Int trace_rc_general(const Partition& shape, GridSpec grid, const PsiGuard& guard = {});
Int trace_rcrc_general(const Partition& shape, GridSpec grid, const PsiGuard& guard = {});

// Shapes of kt cells and depth <= min(k,t).
std::vector<Partition> expansion_shapes(GridSpec grid);

TraceTable trace_table(GridSpec grid, TraceKind kind, const PsiGuard& guard = {});
TraceTable trace_table_two_row(GridSpec grid, TraceKind kind, unsigned max_a);

// Tabulated polynomial families.
Rational t3_denominator(unsigned a, unsigned k);
Rational t3_rc_polynomial(unsigned a, const Rational& k);
std::optional<Rational> t3_rcrc_polynomial(unsigned a, const Rational& k);
Rational trace_rc_t3_table(unsigned k, unsigned a);
// Degree in k and leading coefficient of Q^3_{a,k}; degree of the RCRC polynomial.
std::pair<unsigned, Rational> t3_denominator_leading(unsigned a);
std::optional<unsigned> t3_rcrc_degree(unsigned a);
std::optional<Rational> trace_rcrc_t3_table(unsigned k, unsigned a);
Rational general_prefactor(unsigned k, unsigned t, unsigned a);
// Full polynomials exist only for a <= 5.
std::optional<Rational> general_rc_polynomial(unsigned a, const Rational& k, const Rational& t);

// tr rho_{(kt-4,2,2)}(RC) for k,t >= 3.
Rational trace_rc_kt422_closed(unsigned k, unsigned t);

// Highest-order monomials of the general-(k,t) polynomials; the rest is unknown.
struct Monomial {
    long coef;
    unsigned k_deg;
    unsigned t_deg;
};
std::span<const Monomial> general_leading_terms(TraceKind kind, unsigned a);

// Direct enumeration over the subgroups.
struct BruteForceResult {
    Int total; // number of (r1,c1,r2,c2) with r1 c1 r2 c2 = e
    // cycle type of rc -> number of pairs (r,c), filled when requested
    std::vector<std::pair<Partition, Int>> rc_classes;
};
struct BruteForceGuard {
    unsigned max_cells_total = 10;
    unsigned max_cells_classes = 9;
};
BruteForceResult trace_bruteforce(GridSpec grid, bool with_classes, const BruteForceGuard& guard = {});
// cycle type of products (r1 c1)(r2 c2) over all quadruples; tiny grids only
std::vector<std::pair<Partition, Int>> rcrc_classes(GridSpec grid, unsigned max_cells = 6);

} // namespace pm
