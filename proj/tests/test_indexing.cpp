#include <doctest.h>

#include <random>

#include "stepop/indexing.hpp"

using namespace stepop;

TEST_CASE("diamond merges disjoint supports in dimension order") {
    const MultiIndex x{DimSubset::of({1, 3}), {2, 1}};
    const MultiIndex y{DimSubset::of({2}), {3}};
    const MultiIndex merged = diamond(x, y);
    CHECK(merged.support() == DimSubset::of({1, 2, 3}));
    CHECK(merged.entries() == std::vector<int>{2, 3, 1});
}

TEST_CASE("diamond with the empty index is the identity") {
    const MultiIndex empty{};
    const MultiIndex y{DimSubset::of({1, 2}), {1, 1}};
    CHECK(diamond(empty, y) == y);
    CHECK(diamond(y, empty) == y);
}

TEST_CASE("diamond rejects overlapping supports") {
    const MultiIndex x{DimSubset::of({1}), {1}};
    const MultiIndex y{DimSubset::of({1, 2}), {1, 2}};
    CHECK_THROWS_AS(diamond(x, y), IndexError);
}

TEST_CASE("diamond is commutative on random disjoint pairs") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> bits(0, 15);
    std::uniform_int_distribution<int> entry(1, 3);
    for (int t = 0; t < 200; ++t) {
        const DimSubset a{static_cast<std::uint32_t>(bits(rng))};
        const DimSubset b = DimSubset{static_cast<std::uint32_t>(bits(rng))}.minus(a);
        std::vector<int> ea, eb;
        for (int k = 0; k < a.size(); ++k) ea.push_back(entry(rng));
        for (int k = 0; k < b.size(); ++k) eb.push_back(entry(rng));
        const MultiIndex x{a, ea}, y{b, eb};
        CHECK(diamond(x, y) == diamond(y, x));
    }
}

TEST_CASE("diamond is associative on pairwise-disjoint supports") {
    // exhaustive over N <= 3, p <= 2: all ordered triples of disjoint subsets
    const int n = 3, p = 2;
    for (DimSubset a : enumerate_subsets(n))
        for (DimSubset b : enumerate_subsets(n)) {
            if (!a.disjoint_with(b)) continue;
            for (DimSubset c : enumerate_subsets(n)) {
                if (!c.disjoint_with(a.unite(b))) continue;
                for (const MultiIndex& x : enumerate_indices(a, p))
                    for (const MultiIndex& y : enumerate_indices(b, p))
                        for (const MultiIndex& z : enumerate_indices(c, p))
                            CHECK(diamond(diamond(x, y), z) == diamond(x, diamond(y, z)));
            }
        }
}

TEST_CASE("restrict_to picks the named components") {
    const MultiIndex x{DimSubset::of({1, 2, 3}), {2, 3, 1}};
    const MultiIndex r = restrict_to(x, DimSubset::of({2}));
    CHECK(r.support() == DimSubset::of({2}));
    CHECK(r.entries() == std::vector<int>{3});
    CHECK(restrict_to(x, x.support()) == x);
}

TEST_CASE("restrict_to rejects targets outside the support") {
    const MultiIndex x{DimSubset::of({1, 3}), {1, 2}};
    CHECK_THROWS_AS(restrict_to(x, DimSubset::of({2})), IndexError);
}

TEST_CASE("restriction partition identity") {
    // diamond(restrict(x, alpha), restrict(x, gamma \ alpha)) == x
    const int p = 3;
    for (DimSubset gamma : enumerate_subsets(3))
        for (const MultiIndex& x : enumerate_indices(gamma, p))
            for_each_subset_of(gamma, [&](DimSubset alpha) {
                CHECK(diamond(restrict_to(x, alpha), restrict_to(x, gamma.minus(alpha))) == x);
            });
}

TEST_CASE("rank orders indices with the smallest dimension most significant") {
    const DimSubset alpha = DimSubset::of({1, 2});
    const int p = 2;
    CHECK(index_rank(MultiIndex{alpha, {1, 1}}, p) == 0);
    CHECK(index_rank(MultiIndex{alpha, {1, 2}}, p) == 1);
    CHECK(index_rank(MultiIndex{alpha, {2, 1}}, p) == 2);
    CHECK(index_rank(MultiIndex{alpha, {2, 2}}, p) == 3);
    CHECK(index_rank(MultiIndex{DimSubset::of({2}), {2}}, 3) == 1);
}

TEST_CASE("rank and unrank are inverse bijections") {
    for (int p = 1; p <= 3; ++p)
        for (DimSubset alpha : enumerate_subsets(3)) {
            const auto all = enumerate_indices(alpha, p);
            CHECK(all.size() == ipow(p, alpha.size()));
            for (std::uint64_t r = 0; r < all.size(); ++r) {
                CHECK(index_rank(all[r], p) == r);
                CHECK(index_unrank(alpha, r, p) == all[r]);
            }
        }
}

TEST_CASE("unrank rejects out-of-range ranks") {
    CHECK_THROWS_AS(index_unrank(DimSubset::of({1}), 2, 2), IndexError);
    CHECK_THROWS_AS(index_unrank(DimSubset{}, 1, 2), IndexError);
}

TEST_CASE("subset enumeration is canonical") {
    const auto subsets = enumerate_subsets(2);
    REQUIRE(subsets.size() == 4);
    CHECK(subsets[0] == DimSubset{});
    CHECK(subsets[1] == DimSubset::of({1}));
    CHECK(subsets[2] == DimSubset::of({2}));
    CHECK(subsets[3] == DimSubset::of({1, 2}));
    for (int n = 0; n <= 5; ++n)
        CHECK(enumerate_subsets(n).size() == (std::size_t{1} << n));
}

TEST_CASE("subset block counts sum to (p+1)^N") {
    for (int n = 1; n <= 4; ++n)
        for (int p = 1; p <= 4; ++p) {
            std::uint64_t total = 0;
            for (DimSubset alpha : enumerate_subsets(n)) total += ipow(p, n - alpha.size());
            CHECK(total == ipow(p + 1, n));
        }
}

TEST_CASE("complement is an involution and lattice laws hold") {
    const int n = 4;
    for (DimSubset a : enumerate_subsets(n)) {
        CHECK(a.complement(n).complement(n) == a);
        for (DimSubset b : enumerate_subsets(n)) {
            CHECK(a.unite(b).complement(n) == a.complement(n).intersect(b.complement(n)));
            CHECK(a.intersect(b) == b.intersect(a));
        }
    }
}

TEST_CASE("size guards reject oversized enumerations") {
    CHECK_THROWS_AS(enumerate_subsets(17), SizeGuardError);
}
