#pragma once

#include "permoments/exact.hpp"

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace pm {

class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<unsigned> parts);
    explicit Partition(std::vector<unsigned> parts);

    unsigned size() const { return size_; }
    unsigned depth() const { return static_cast<unsigned>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    // zero past the last part
    unsigned operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    const std::vector<unsigned>& parts() const { return parts_; }

    // Lexicographic on the part sequence; for partitions of equal size this is the
    // usual lex order on Young diagrams.
    auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }
    bool operator==(const Partition& o) const = default;

    std::string str() const;

private:
    std::vector<unsigned> parts_;
    unsigned size_ = 0;
};

Partition conjugate(const Partition& p);

// Throws DomainError when sizes differ.
std::strong_ordering lex_compare(const Partition& mu, const Partition& nu);
bool dominates(const Partition& mu, const Partition& nu);

// number of parts equal to v, for v >= 1
unsigned multiplicity(const Partition& p, unsigned v);

Int hook_product(const Partition& p);
Int hook_dim(const Partition& p);
Int weyl_dim(const Partition& p, unsigned d);

// Lex-descending.
std::vector<Partition> partitions_of(unsigned n);
std::vector<Partition> partitions_in_rectangle(unsigned n, unsigned rows, unsigned cols);

} // namespace pm
