#include <doctest.h>

#include <random>

#include "equimap/fp.hpp"
#include "support.hpp"

using namespace equimap;
using namespace testsupport;

namespace {

FpVector fpv(std::uint32_t p, std::vector<std::uint32_t> e) { return FpVector(p, std::move(e)); }

} // namespace

TEST_CASE("rref canonical forms") {
    // rows (1,2),(2,1) over F_3: second row is twice the first
    auto [s, rank] = rref({fpv(3, {1, 2}), fpv(3, {2, 1})});
    CHECK(rank == 1);
    REQUIRE(s.basis.size() == 1);
    CHECK(s.basis[0] == fpv(3, {1, 2}));

    auto [z, zrank] = rref({fpv(3, {0, 0})});
    CHECK(zrank == 0);
    CHECK(z.is_zero());

    auto [id, idrank] = rref({fpv(2, {1, 0}), fpv(2, {0, 1})});
    CHECK(idrank == 2);
    CHECK(id.basis[0] == fpv(2, {1, 0}));
    CHECK(id.basis[1] == fpv(2, {0, 1}));

    CHECK_THROWS_AS(rref({fpv(3, {1, 2}), fpv(5, {1, 2})}), InputError);
    CHECK_THROWS_AS(rref({fpv(3, {1, 2}), fpv(3, {1})}), InputError);
}

TEST_CASE("rref is idempotent and basis-independent") {
    std::mt19937_64 rng(7);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::uint32_t k : {2u, 3u}) {
            for (int rep = 0; rep < 30; ++rep) {
                std::vector<FpVector> rows;
                const std::size_t n = 1 + rng() % k;
                for (std::size_t i = 0; i < n; ++i) rows.push_back(random_nonzero_fp(p, k, rng));
                FpSubspace s = rref(rows).first;
                CHECK(rref(s.basis).first == s);

                // random invertible row operations preserve the canonical form
                std::vector<FpVector> mixed = rows;
                for (int op = 0; op < 20; ++op) {
                    std::size_t i = rng() % mixed.size(), j = rng() % mixed.size();
                    std::uint32_t c = 1 + rng() % (p - 1);
                    if (i == j) {
                        mixed[i] = fp_scale(mixed[i], c);
                    } else {
                        for (std::size_t t = 0; t < mixed[i].size(); ++t)
                            mixed[i].entries[t] =
                                (mixed[i].entries[t] + c * mixed[j].entries[t]) % p;
                    }
                }
                CHECK(rref(mixed).first == s);
            }
        }
    }
}

TEST_CASE("annihilator frozen examples") {
    FpSubspace s = rref({fpv(3, {1, 0})}).first;
    FpSubspace ann = annihilator(s);
    REQUIRE(ann.rank() == 1);
    CHECK(ann.basis[0] == fpv(3, {0, 1}));

    CHECK(annihilator(fp_zero_subspace(5, 3)) == fp_full_space(5, 3));
    CHECK(annihilator(fp_full_space(2, 2)) == fp_zero_subspace(2, 2));
}

TEST_CASE("annihilator involution and rank duality, exhaustive p<=5 k<=3") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::uint32_t k : {1u, 2u, 3u}) {
            for (const auto& s : all_subspaces(p, k)) {
                FpSubspace ann = annihilator(s);
                CHECK(s.rank() + ann.rank() == k);
                CHECK(annihilator(ann) == s);
                CHECK(subspace_elements(ann) == brute_annihilator_elements(s));
            }
        }
    }
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(2, 5) == 3);
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(1, 2) == 1);
    CHECK_THROWS_AS(mod_inverse(0, 5), InputError);
    CHECK_THROWS_AS(mod_inverse(3, 9), InputError); // composite modulus

    for (std::uint32_t p = 2; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        for (std::uint32_t j = 1; j < p; ++j)
            CHECK((std::uint64_t(mod_inverse(j, p)) * j) % p == 1);
    }
}

TEST_CASE("span_of_subsets frozen examples") {
    auto spans = span_of_subsets({fpv(3, {1, 0}), fpv(3, {0, 1})});
    REQUIRE(spans.size() == 3);

    auto one = span_of_subsets({fpv(3, {1, 0}), fpv(3, {2, 0})});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == rref({fpv(3, {1, 0})}).first);

    auto single = span_of_subsets({fpv(5, {2, 3})});
    REQUIRE(single.size() == 1);
    CHECK(single[0].rank() == 1);
}

TEST_CASE("span_of_subsets equals explicit subset enumeration") {
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint32_t k : {2u, 3u}) {
            for (int rep = 0; rep < 20; ++rep) {
                std::vector<FpVector> gens;
                const std::size_t n = 1 + rng() % 4;
                for (std::size_t i = 0; i < n; ++i) gens.push_back(random_nonzero_fp(p, k, rng));

                std::set<std::set<std::vector<std::uint32_t>>> brute;
                for (std::size_t mask = 1; mask < (1u << n); ++mask) {
                    std::vector<FpVector> subset;
                    for (std::size_t i = 0; i < n; ++i)
                        if (mask & (1u << i)) subset.push_back(gens[i]);
                    brute.insert(brute_span_elements(subset));
                }
                std::set<std::set<std::vector<std::uint32_t>>> fast;
                for (const auto& s : span_of_subsets(gens)) fast.insert(subspace_elements(s));
                CHECK(fast == brute);
            }
        }
    }
}

TEST_CASE("projective line count is (p^k - 1)/(p - 1)") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::uint32_t k : {1u, 2u, 3u}) {
            std::vector<FpVector> nonzero;
            for (const auto& v : all_fp_vectors(p, k))
                if (!v.is_zero()) nonzero.push_back(v);
            std::size_t lines = 0, total = 1;
            for (std::uint32_t i = 0; i < k; ++i) total *= p;
            for (const auto& s : span_of_subsets(nonzero))
                if (s.rank() == 1) ++lines;
            CHECK(lines == (total - 1) / (p - 1));
        }
    }
}

TEST_CASE("composite moduli are rejected at construction") {
    CHECK_THROWS_AS(fpv(4, {1, 0}), InputError);
    CHECK_THROWS_AS(fpv(1, {0}), InputError);
    CHECK_THROWS_AS(FpVector::reduce(6, {1, 2}), InputError);
}
