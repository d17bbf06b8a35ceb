#include "permoments/symfunc.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace pm;

TEST_CASE("kostka numbers")
{
    CHECK(kostka(Partition{2, 1}, Partition{1, 1, 1}) == 2);
    CHECK(kostka(Partition{3, 1}, Partition{3, 1}) == 1);
    CHECK(kostka(Partition{2, 2}, Partition{3, 1}) == 0);
    CHECK_THROWS_AS(kostka(Partition{2}, Partition{1}), DomainError);
    for (unsigned n = 0; n <= 7; ++n)
        for (const auto& la : partitions_of(n))
            for (const auto& mu : partitions_of(n)) {
                std::vector<unsigned> content(mu.parts());
                CHECK(kostka(la, mu) == oracle::ssyt_count(la, content));
            }
}

TEST_CASE("kostka matrix is unit lower triangular")
{
    KostkaMatrix k2 = kostka_matrix(2);
    REQUIRE(k2.dim() == 2);
    CHECK(k2.shapes()[0] == Partition{2});
    CHECK(k2(Partition{2}, Partition{2}) == 1);
    CHECK(k2(Partition{2}, Partition{1, 1}) == 1);
    CHECK(k2(Partition{1, 1}, Partition{2}) == 0);
    KostkaMatrix k0 = kostka_matrix(0);
    REQUIRE(k0.dim() == 1);
    CHECK(k0.is_identity());
    KostkaMatrix box = kostka_matrix(4, Rectangle{2, 2});
    REQUIRE(box.dim() == 1);
    CHECK(box.shapes()[0] == Partition{2, 2});
    for (unsigned n = 0; n <= 10; ++n) {
        KostkaMatrix k = kostka_matrix(n);
        CHECK(k.lower_unitriangular());
        for (const auto& a : k.shapes())
            for (const auto& b : k.shapes()) {
                CHECK(k(a, b) >= 0);
                if (lex_compare(a, b) == std::strong_ordering::less)
                    CHECK(k(a, b) == 0);
                if (a == b)
                    CHECK(k(a, b) == 1);
            }
    }
}

TEST_CASE("inverse kostka")
{
    KostkaMatrix k2 = kostka_matrix(2);
    ShapeMatrix inv2 = inverse_kostka(k2);
    CHECK(inv2(Partition{2}, Partition{1, 1}) == -1);
    CHECK(inv2(Partition{1, 1}, Partition{2}) == 0);
    CHECK(inverse_kostka(kostka_matrix(0)).is_identity());
    for (unsigned n = 1; n <= 9; ++n) {
        KostkaMatrix k = kostka_matrix(n);
        ShapeMatrix inv = inverse_kostka(k);
        CHECK((k * inv).is_identity());
        CHECK((inv * k).is_identity());
    }
    KostkaMatrix rect = kostka_matrix(6, Rectangle{3, 3});
    CHECK((rect * inverse_kostka(rect)).is_identity());
}

TEST_CASE("0-1 matrix counts against enumeration")
{
    CHECK(ib_count(Partition{1, 1}, Partition{1, 1}) == 2);
    CHECK(ib_count(Partition{2}, Partition{1, 1}) == 1);
    CHECK(ib_count(Partition{2}, Partition{2}) == 0);
    CHECK_THROWS_AS(ib_count(Partition{2}, Partition{1}), DomainError);
    for (unsigned n = 1; n <= 8; ++n)
        for (const auto& mu : partitions_of(n))
            for (const auto& nu : partitions_of(n)) {
                if (mu.depth() * nu.depth() > 16)
                    continue;
                Int ib = ib_count(mu, nu);
                std::vector<unsigned> r(mu.parts()), c(nu.parts());
                CHECK(ib == oracle::binary_matrix_count(r, c));
                CHECK(ib == ib_count(nu, mu));
                CHECK((ib > 0) == dominates(conjugate(mu), nu));
            }
}

TEST_CASE("nonnegative matrix counts against enumeration")
{
    CHECK(im_count(Partition{2}, Partition{2}) == 1);
    CHECK(im_count(Partition{1, 1}, Partition{1, 1}) == 2);
    CHECK(im_count(Partition{2, 1}, Partition{2, 1}) == 2);
    for (unsigned n = 1; n <= 6; ++n)
        for (const auto& mu : partitions_of(n))
            for (const auto& nu : partitions_of(n)) {
                std::vector<unsigned> r(mu.parts()), c(nu.parts());
                CHECK(im_count(mu, nu) == oracle::nonneg_matrix_count(r, c));
            }
}

TEST_CASE("typed matrix counts")
{
    RowColType rows({{1, 1}, {1, 1}});
    CHECK(ib_count_typed(rows, rows, 2) == 2);
    CHECK(ib_count_typed(RowColType({{2, 0}, {0, 1}}), RowColType({{1, 1}, {1, 0}}), 2) == 1);

    // single symbol reduces to 0-1 counts
    for (unsigned n = 1; n <= 6; ++n)
        for (const auto& mu : partitions_of(n))
            for (const auto& nu : partitions_of(n)) {
                std::vector<std::vector<unsigned>> r, c;
                for (unsigned v : mu.parts())
                    r.push_back({v});
                for (unsigned v : nu.parts())
                    c.push_back({v});
                CHECK(ib_count_typed(RowColType(r), RowColType(c), 1) == ib_count(mu, nu));
            }

    // two and three symbols on small grids against direct search
    std::vector<std::vector<std::vector<unsigned>>> lines2 = {
        {{1, 1}, {1, 1}, {0, 1}}, {{2, 0}, {0, 2}, {1, 0}}, {{1, 0}, {1, 1}, {1, 1}}, {{0, 1}, {2, 1}, {1, 0}}};
    for (const auto& r : lines2)
        for (const auto& c : lines2) {
            RowColType rt(r), ct(c);
            CHECK(ib_count_typed(rt, ct, 2) == oracle::typed_matrix_count(r, c, 2));
        }
    std::vector<std::vector<unsigned>> r3 = {{1, 1, 1}, {1, 0, 1}}, c3 = {{1, 0, 1}, {0, 1, 0}, {1, 0, 1}};
    CHECK(ib_count_typed(RowColType(r3), RowColType(c3), 3) == oracle::typed_matrix_count(r3, c3, 3));
}

TEST_CASE("row/column type canonical form and stabilizer")
{
    RowColType t({{0, 1}, {2, 0}, {0, 1}});
    RowColType c = t.canonical();
    CHECK(c.is_canonical());
    CHECK(c[0] == std::vector<unsigned>{2, 0});
    CHECK(c.stabilizer() == 2);
    CHECK(c.totals() == std::vector<unsigned>{2, 2});
}

TEST_CASE("two-row plethysm table")
{
    for (unsigned k = 2; k <= 8; ++k)
        for (unsigned t = 2; t <= 8; ++t) {
            CHECK(plethysm_two_row(k, t, 0) == 1);
            CHECK(plethysm_two_row(k, t, 1) == 0);
            CHECK(plethysm_two_row(k, t, 2) == 1);
            if (k >= 3)
                CHECK(plethysm_two_row(k, t, 3) == (t >= 3 ? 1 : 0));
            if (k >= 4 && t >= 4)
                CHECK(plethysm_two_row(k, t, 4) == 2);
            for (unsigned a = 0; 2 * a <= k * t; ++a)
                CHECK(plethysm_two_row(k, t, a) == plethysm_two_row(t, k, a));
        }
}

TEST_CASE("t = 2 parity rule")
{
    for (unsigned k = 2; k <= 12; ++k)
        for (unsigned a = 0; a <= k; ++a) {
            Partition shape = a ? Partition{2 * k - a, a} : Partition{2 * k};
            CHECK(plethysm(shape, k, 2) == (a % 2 == 0 ? 1 : 0));
        }
}

TEST_CASE("tabulated three-row plethysms")
{
    for (unsigned k = 3; k <= 6; ++k)
        for (unsigned t = 3; t <= 6; ++t) {
            unsigned n = k * t;
            CHECK(plethysm_special(Partition{n - 2, 1, 1}, k, t) == 0);
            CHECK(plethysm_special(Partition{n - 3, 2, 1}, k, t) == 0);
            CHECK(plethysm_special(Partition{n - 4, 2, 2}, k, t) == 1);
        }
    CHECK_THROWS_AS(plethysm_special(Partition{5, 4}, 3, 3), UnsupportedError);
    CHECK_THROWS_AS(plethysm(Partition{3, 3, 2, 1}, 3, 3), UnsupportedError);
}

TEST_CASE("plethysm against the monomial expansion of h_k[h_t]")
{
    for (unsigned k = 1; k <= 6; ++k)
        for (unsigned t = 1; t <= 6; ++t) {
            if (k * t > 12)
                continue;
            for (const auto& shape : partitions_of(k * t)) {
                if (shape.depth() > 3 || !plethysm_known(shape, k, t))
                    continue;
                CAPTURE(k);
                CAPTURE(t);
                CAPTURE(shape.str());
                CHECK(plethysm(shape, k, t) == oracle::plethysm_h(shape, k, t));
            }
        }
}
