#pragma once

#include "permoments/partitions.hpp"

#include <map>
#include <vector>

namespace pm {

Int kostka(const Partition& shape, const Partition& content);

// Square matrix of exact integers indexed by a fixed, lex-descending shape list.
class ShapeMatrix {
public:
    ShapeMatrix() = default;
    explicit ShapeMatrix(std::vector<Partition> shapes);

    const std::vector<Partition>& shapes() const { return shapes_; }
    std::size_t dim() const { return shapes_.size(); }
    bool contains(const Partition& p) const { return index_.count(p) != 0; }

    const Int& operator()(const Partition& row, const Partition& col) const;
    Int& operator()(const Partition& row, const Partition& col);

    ShapeMatrix operator*(const ShapeMatrix& o) const;
    bool is_identity() const;
    bool lower_unitriangular() const;

private:
    std::size_t at(const Partition& p) const;
    std::vector<Partition> shapes_;
    std::map<Partition, std::size_t> index_;
    std::vector<Int> cells_;
};

using KostkaMatrix = ShapeMatrix;

struct Rectangle {
    unsigned rows;
    unsigned cols;
};

KostkaMatrix kostka_matrix(unsigned n);
KostkaMatrix kostka_matrix(unsigned n, Rectangle box);
ShapeMatrix inverse_kostka(const KostkaMatrix& k);

Int ib_count(const Partition& row_sums, const Partition& col_sums);
Int im_count(const Partition& row_sums, const Partition& col_sums);

// Per-line symbol counts of a matrix over {0,1,..,l}; entry n-1 of each vector
// counts symbol n, zeros are implied by the line length.
class RowColType {
public:
    RowColType() = default;
    explicit RowColType(std::vector<std::vector<unsigned>> lines);

    std::size_t lines() const { return lines_.size(); }
    unsigned symbols() const { return symbols_; }
    const std::vector<unsigned>& operator[](std::size_t i) const { return lines_[i]; }
    const std::vector<std::vector<unsigned>>& data() const { return lines_; }

    std::vector<unsigned> totals() const;
    RowColType canonical() const;
    bool is_canonical() const;
    // |Stab| under permutations of the lines
    Int stabilizer() const;

    auto operator<=>(const RowColType&) const = default;

private:
    std::vector<std::vector<unsigned>> lines_;
    unsigned symbols_ = 0;
};

inline constexpr unsigned kDefaultAreaCap = 36;

// Number of matrices with the given row and column types. Mismatched totals give 0.
Int ib_count_typed(const RowColType& rows, const RowColType& cols, unsigned symbols,
                   unsigned area_cap = kDefaultAreaCap);

// Number of partitions of a fitting in a rows x cols box.
Int box_count(unsigned rows, unsigned cols, unsigned a);

Int plethysm_two_row(unsigned k, unsigned t, unsigned a);
// Tabulated three-row shapes and the t = 2 two-row family; other shapes throw UnsupportedError.
Int plethysm_special(const Partition& shape, unsigned k, unsigned t);
// Either route, for shapes of depth <= 3 that are covered.
bool plethysm_known(const Partition& shape, unsigned k, unsigned t);
Int plethysm(const Partition& shape, unsigned k, unsigned t);

} // namespace pm
