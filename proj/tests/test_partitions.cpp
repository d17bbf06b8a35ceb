#include "oracles.hpp"

#include <doctest.h>

using namespace pm;

TEST_CASE("conjugate")
{
    CHECK(conjugate(Partition{6, 4, 4, 1}) == Partition{4, 3, 3, 3, 1, 1});
    CHECK(conjugate(Partition{}) == Partition{});
    CHECK(conjugate(Partition{3, 1}) == Partition{2, 1, 1});
    for (unsigned n = 0; n <= 12; ++n)
        for (const auto& p : partitions_of(n))
            CHECK(conjugate(conjugate(p)) == p);
}

TEST_CASE("partition construction rejects bad parts")
{
    CHECK_THROWS_AS(Partition({2, 3}), DomainError);
    CHECK_THROWS_AS(Partition({2, 0}), DomainError);
    Partition p{4, 2, 2};
    CHECK(p.size() == 8);
    CHECK(p.depth() == 3);
    CHECK(p[5] == 0);
    CHECK(Partition{}.size() == 0);
}

TEST_CASE("lex order")
{
    CHECK(lex_compare(Partition{3, 1}, Partition{2, 2}) == std::strong_ordering::greater);
    CHECK(lex_compare(Partition{2, 2}, Partition{2, 2}) == std::strong_ordering::equal);
    CHECK(lex_compare(Partition{2, 1, 1}, Partition{3, 1}) == std::strong_ordering::less);
    CHECK_THROWS_AS(lex_compare(Partition{2}, Partition{1}), DomainError);
}

TEST_CASE("partitions_of is lex-descending and complete")
{
    const unsigned counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (unsigned n = 0; n <= 12; ++n) {
        auto ps = partitions_of(n);
        CHECK(ps.size() == counts[n]);
        for (std::size_t i = 1; i < ps.size(); ++i)
            CHECK(lex_compare(ps[i - 1], ps[i]) == std::strong_ordering::greater);
    }
    REQUIRE(partitions_of(0).size() == 1);
    CHECK(partitions_of(0)[0].empty());
}

TEST_CASE("hook_dim against standard tableau enumeration")
{
    CHECK(hook_dim(Partition{7}) == 1);
    CHECK(hook_dim(Partition{2, 1}) == 2);
    for (unsigned n = 0; n <= 8; ++n)
        for (const auto& p : partitions_of(n))
            CHECK(hook_dim(p) == oracle::syt_count(p));
    for (unsigned n = 0; n <= 12; ++n)
        for (const auto& p : partitions_of(n))
            CHECK(hook_dim(p) == hook_dim(conjugate(p)));
}

TEST_CASE("sum of squared dimensions is n!")
{
    for (unsigned n = 0; n <= 10; ++n) {
        Int sum = 0;
        for (const auto& p : partitions_of(n))
            sum += hook_dim(p) * hook_dim(p);
        CHECK(sum == factorial(n));
    }
}

TEST_CASE("alternating-product form of the dimension")
{
    for (unsigned n = 1; n <= 10; ++n)
        for (const auto& p : partitions_of(n)) {
            Int num = factorial(n), den = 1;
            for (unsigned i = 0; i < p.depth(); ++i) {
                den *= factorial(p[i] + p.depth() - 1 - i);
                for (unsigned j = i + 1; j < p.depth(); ++j)
                    num *= (p[i] + p.depth() - 1 - i) - (p[j] + p.depth() - 1 - j);
            }
            CHECK(num / den == hook_dim(p));
        }
}

TEST_CASE("weyl_dim against semistandard enumeration")
{
    CHECK(weyl_dim(Partition{1}, 7) == 7);
    CHECK(weyl_dim(Partition{2}, 2) == 3);
    CHECK(weyl_dim(Partition{1, 1, 1}, 2) == 0);
    for (unsigned n = 1; n <= 8; ++n)
        for (const auto& p : partitions_of(n))
            for (unsigned d = p.depth(); d <= p.depth() + 3; ++d)
                CHECK(weyl_dim(p, d) == oracle::ssyt_bounded(p, d));
}

TEST_CASE("content formula and large-d limit of weyl_dim")
{
    for (unsigned n = 1; n <= 6; ++n)
        for (const auto& p : partitions_of(n)) {
            for (unsigned d : {p.depth(), p.depth() + 2, 9u}) {
                Rational prod = Rational(hook_dim(p)) / Rational(factorial(n));
                for (unsigned i = 0; i < p.depth(); ++i)
                    for (unsigned j = 0; j < p[i]; ++j)
                        prod *= Rational(static_cast<long>(d) + static_cast<long>(j) - static_cast<long>(i));
                CHECK(prod == Rational(weyl_dim(p, d)));
            }
            unsigned d = 100 * n;
            Rational ratio = Rational(weyl_dim(p, d) * factorial(n)) / Rational(ipow(Int(d), n));
            double rel = to_double(ratio / Rational(hook_dim(p))) - 1;
            CHECK(std::abs(rel) < 0.05);
        }
}

TEST_CASE("partitions_in_rectangle")
{
    auto two = partitions_in_rectangle(2, 3, 3);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Partition{2});
    CHECK(two[1] == Partition{1, 1});
    auto zero = partitions_in_rectangle(0, 2, 5);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].empty());
    auto three = partitions_in_rectangle(3, 3, 3);
    REQUIRE(three.size() == 3);
    CHECK(three[1] == Partition{2, 1});
    for (unsigned r = 1; r <= 4; ++r)
        for (unsigned c = 1; c <= 4; ++c)
            for (unsigned a = 0; a <= r * c; ++a) {
                std::size_t expect = 0;
                for (const auto& p : partitions_of(a))
                    expect += p.depth() <= r && p[0] <= c;
                CHECK(partitions_in_rectangle(a, r, c).size() == expect);
            }
}
