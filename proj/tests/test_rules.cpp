#include <doctest.h>

#include <random>

#include "caenc/rules.hpp"
#include "test_support.hpp"

using namespace caenc;
using test_support::to_bitmatrix;

namespace {

BitMatrix ones_at(std::size_t n, std::initializer_list<std::pair<int, int>> one_based) {
    BitMatrix m(n, n);
    for (auto [r, c] : one_based) m.set(r - 1, c - 1);
    return m;
}

}  // namespace

TEST_CASE("decompose_rule") {
    CHECK(decompose_rule(171) == std::vector<int>{1, 2, 8, 32, 128});
    CHECK(decompose_rule(0).empty());
    CHECK(decompose_rule(69) == std::vector<int>{1, 4, 64});
    CHECK(decompose_rule(511).size() == 9);
    CHECK_THROWS_AS(decompose_rule(512), std::out_of_range);
    CHECK_THROWS_AS(decompose_rule(-1), std::out_of_range);
}

TEST_CASE("neighbor_offset follows the rule grid") {
    CHECK(neighbor_offset(1) == NeighborOffset{0, 0});
    CHECK(neighbor_offset(128) == NeighborOffset{-1, 0});
    CHECK(neighbor_offset(4) == NeighborOffset{1, 1});
    for (int f : kFundamentalRules) {
        auto [dr, dc] = oracle::offset_of(f);
        CHECK(neighbor_offset(f) == NeighborOffset{dr, dc});
    }
    CHECK_THROWS_AS(neighbor_offset(3), std::invalid_argument);
}

TEST_CASE("mask_sequence") {
    CHECK(mask_sequence(MaskSequence::s1, 2, 3) == "101");
    CHECK(mask_sequence(MaskSequence::s2, 2, 3) == "010");
    CHECK(mask_sequence(MaskSequence::s1, 3, 8) == "11011011");
    CHECK(mask_sequence(MaskSequence::s2, 3, 7) == "0110110");
    CHECK(mask_sequence(MaskSequence::s1, 1, 4) == "0000");
    CHECK(mask_sequence(MaskSequence::s1, 4, 0).empty());
}

TEST_CASE("fundamental_matrix examples") {
    CHECK(fundamental_matrix(1, Boundary::null, 2, 2) == BitMatrix::identity(4));
    CHECK(fundamental_matrix(2, Boundary::null, 2, 2) == ones_at(4, {{1, 2}, {3, 4}}));

    // Periodic M_8 at 2x2: identity blocks above the block diagonal and in the
    // wrap-around corner.
    BitMatrix m8 = fundamental_matrix(8, Boundary::periodic, 2, 2);
    CHECK(m8 == BitMatrix::from_rows({"0010", "0001", "1000", "0100"}));

    CHECK_THROWS_AS(fundamental_matrix(3, Boundary::null, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_matrix(1, Boundary::null, 65, 64), std::length_error);
}

TEST_CASE("periodic blocks are the printed T_1 and T_2 at n = 4") {
    CHECK(shift_block_t1(4) == BitMatrix::from_rows({"0001", "1000", "0100", "0010"}));
    CHECK(shift_block_t2(4) == BitMatrix::from_rows({"0100", "0010", "0001", "1000"}));
}

TEST_CASE("rule_matrix examples") {
    CHECK(rule_matrix({69, Boundary::null, 2, 2}) == BitMatrix::from_rows({"1001", "0100", "0010", "1001"}));
    CHECK(rule_matrix({0, Boundary::null, 3, 3}).is_zero());
    CHECK(rule_matrix({34, Boundary::periodic, 2, 2}).is_zero());
    CHECK_THROWS_AS(rule_matrix({512, Boundary::null, 2, 2}), std::out_of_range);
    CHECK_THROWS_AS(rule_matrix({1, Boundary::null, 0, 2}), std::out_of_range);
}

TEST_CASE("property: layout agrees with the neighbourhood construction for m, n <= 6") {
    for (Boundary b : {Boundary::null, Boundary::periodic})
        for (int m = 1; m <= 6; ++m)
            for (int n = 1; n <= 6; ++n)
                for (int f : kFundamentalRules) {
                    CAPTURE(f);
                    CAPTURE(m);
                    CAPTURE(n);
                    BitMatrix layout = fundamental_layout(f, b, m, n);
                    CHECK(layout == fundamental_by_neighbourhood(f, b, m, n));
                    CHECK(layout == to_bitmatrix(oracle::rule_matrix(f, b == Boundary::periodic, m, n)));
                }
}

TEST_CASE("property: periodic fundamental matrices are permutations") {
    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= 6; ++n)
            for (int f : kFundamentalRules) CHECK(is_permutation(fundamental_matrix(f, Boundary::periodic, m, n)));
}

TEST_CASE("property: evolution by rule_matrix equals per-cell evaluation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 4);
        int rule = static_cast<int>(rng() % 512);
        bool periodic = rng() & 1;
        std::vector<int> x(m * n);
        BitVector v(m * n);
        for (int p = 0; p < m * n; ++p) {
            x[p] = static_cast<int>(rng() & 1);
            if (x[p]) v.set(p);
        }
        auto expect = oracle::step(rule, periodic, m, n, x);
        auto got = gf2_apply(rule_matrix({rule, periodic ? Boundary::periodic : Boundary::null, m, n}), v);
        for (int p = 0; p < m * n; ++p) CHECK(got.get(p) == (expect[p] != 0));
    }
}

TEST_CASE("property: disjoint rules add over GF(2)") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        int a = static_cast<int>(rng() % 512), b = static_cast<int>(rng() % 512) & ~a;
        int m = 1 + static_cast<int>(rng() % 5), n = 1 + static_cast<int>(rng() % 5);
        Boundary bd = rng() & 1 ? Boundary::periodic : Boundary::null;
        CHECK((rule_matrix({a, bd, m, n}) ^ rule_matrix({b, bd, m, n})) == rule_matrix({a | b, bd, m, n}));
    }
}
