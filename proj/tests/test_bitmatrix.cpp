#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "caenc/bitmatrix.hpp"

using namespace caenc;

namespace {

const BitMatrix kM69 = BitMatrix::from_rows({"1001", "0100", "0010", "1001"});
const BitMatrix kT1 = BitMatrix::from_rows({"0001", "1000", "0100", "0010"});
const BitMatrix kT2 = BitMatrix::from_rows({"0100", "0010", "0001", "1000"});

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (bit(rng)) m.set(i, j);
    return m;
}

BitVector random_vector(std::mt19937_64& rng, std::size_t n) {
    std::bernoulli_distribution bit(0.5);
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (bit(rng)) v.set(i);
    return v;
}

BitMatrix random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    BitMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p.set(i, perm[i]);
    return p;
}

BitVector vec(const char* bits) { return BitVector::from_string(bits); }

// Preimage set of y under a by trying every x; entries are x as strings.
std::set<std::string> brute_preimages(const BitMatrix& a, const BitVector& y) {
    std::set<std::string> out;
    for (std::size_t x = 0; x < (std::size_t{1} << a.cols()); ++x) {
        bool match = true;
        for (std::size_t i = 0; i < a.rows() && match; ++i) {
            int acc = 0;
            for (std::size_t j = 0; j < a.cols(); ++j) acc ^= a.get(i, j) & ((x >> j) & 1);
            match = (acc != 0) == y.get(i);
        }
        if (match) {
            std::string s(a.cols(), '0');
            for (std::size_t j = 0; j < a.cols(); ++j)
                if ((x >> j) & 1) s[j] = '1';
            out.insert(s);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("bool_product examples") {
    std::mt19937_64 rng(1);
    BitMatrix a = random_matrix(rng, 4, 4);
    CHECK(bool_product(BitMatrix::identity(4), a) == a);
    CHECK(bool_product(kT1, kT2) == BitMatrix::identity(4));

    // Null-boundary 2x2 M_2 and M_16: the product has its single 1 at (1,3).
    BitMatrix m2 = BitMatrix::from_rows({"0100", "0000", "0001", "0000"});
    BitMatrix m16 = BitMatrix::from_rows({"0000", "0010", "0000", "0000"});
    CHECK(bool_product(m2, m16) == BitMatrix::from_rows({"0010", "0000", "0000", "0000"}));

    CHECK_THROWS_AS(bool_product(BitMatrix(2, 3), BitMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("gf2_product examples") {
    std::mt19937_64 rng(2);
    BitMatrix a = random_matrix(rng, 5, 7);
    CHECK(gf2_product(BitMatrix::identity(5), a) == a);
    CHECK(gf2_product(kM69, BitMatrix::column(vec("1001"))) == BitMatrix::column(vec("0000")));
    CHECK(gf2_product(kM69, BitMatrix::column(vec("0110"))) == BitMatrix::column(vec("0110")));
    CHECK(gf2_apply(kM69, vec("1001")) == vec("0000"));
    CHECK_THROWS_AS(gf2_product(BitMatrix(2, 3), BitMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("gf2_rank") {
    CHECK(gf2_rank(BitMatrix::identity(5)) == 5);
    CHECK(gf2_rank(BitMatrix(6, 3)) == 0);
    CHECK(gf2_rank(kM69) == 3);
    CHECK(gf2_rank(BitMatrix::from_rows({"110", "011", "101"})) == 2);
}

TEST_CASE("gf2_solve_affine examples") {
    auto unique = gf2_solve_affine(BitMatrix::identity(3), vec("101"));
    REQUIRE_FALSE(unique.empty());
    CHECK(unique.kernel_basis.empty());
    CHECK(*unique.particular == vec("101"));

    auto zero_preds = gf2_solve_affine(kM69, vec("0000"));
    CHECK(zero_preds.count() == 2);
    auto sols = zero_preds.enumerate();
    std::set<std::string> got;
    for (auto& s : sols) got.insert(s.to_string());
    CHECK(got == std::set<std::string>{"0000", "1001"});

    CHECK(gf2_solve_affine(kM69, vec("0001")).empty());
    CHECK(gf2_solve_affine(kM69, vec("0001")).count() == 0);
    CHECK_THROWS_AS(gf2_solve_affine(kM69, vec("000")), std::invalid_argument);
}

TEST_CASE("matrix_power examples") {
    std::mt19937_64 rng(3);
    CHECK(matrix_power(random_matrix(rng, 6, 6), 0, Product::gf2) == BitMatrix::identity(6));
    BitMatrix sq = BitMatrix::from_rows({"0000", "0100", "0010", "0000"});
    CHECK(matrix_power(kM69, 2, Product::gf2) == sq);
    CHECK(matrix_power(kM69, 3, Product::gf2) == sq);
    CHECK_THROWS_AS(matrix_power(BitMatrix(2, 3), 2, Product::boolean), std::invalid_argument);
}

TEST_CASE("is_permutation examples") {
    CHECK(is_permutation(BitMatrix::identity(6)));
    CHECK(is_permutation(kT1));
    CHECK_FALSE(is_permutation(kM69));
    CHECK_FALSE(is_permutation(BitMatrix(3, 3)));
    CHECK_FALSE(is_permutation(BitMatrix(2, 3)));
}

TEST_CASE("gf2_inverse") {
    auto inv = gf2_inverse(kT1);
    REQUIRE(inv);
    CHECK(*inv == kT2);
    CHECK_FALSE(gf2_inverse(kM69));
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        BitMatrix a = random_matrix(rng, 9, 9);
        auto ai = gf2_inverse(a);
        CHECK(ai.has_value() == (gf2_rank(a) == 9));
        if (ai) CHECK(gf2_product(a, *ai) == BitMatrix::identity(9));
    }
}

TEST_CASE("dump format and dimension cap") {
    CHECK(kM69.dump() == "4 4\n1001\n0100\n0010\n1001\n");
    CHECK(BitMatrix::parse_dump(kM69.dump()) == kM69);
    CHECK_THROWS_AS(BitMatrix::parse_dump("2 2\n10\n"), std::invalid_argument);
    CHECK_THROWS_AS(BitMatrix(kMaxDimension + 1, 1), std::length_error);
    CHECK_NOTHROW(BitMatrix(kMaxDimension, 2));
}

TEST_CASE("property: both products are associative") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> dim(1, 12);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t a = dim(rng), b = dim(rng), c = dim(rng), d = dim(rng);
        BitMatrix x = random_matrix(rng, a, b, 0.3), y = random_matrix(rng, b, c, 0.3), z = random_matrix(rng, c, d, 0.3);
        for (Product p : {Product::gf2, Product::boolean})
            CHECK(product(product(x, y, p), z, p) == product(x, product(y, z, p), p));
    }
}

TEST_CASE("property: GF(2) linearity") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 70;
        BitMatrix t = random_matrix(rng, n, n);
        BitVector x = random_vector(rng, n), y = random_vector(rng, n);
        CHECK(gf2_apply(t, x ^ y) == (gf2_apply(t, x) ^ gf2_apply(t, y)));
    }
}

TEST_CASE("property: products coincide on permutation operands") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 20;
        BitMatrix p = random_permutation(rng, n);
        REQUIRE(is_permutation(p));
        BitMatrix a = random_matrix(rng, n, 1 + rng() % 20);
        CHECK(bool_product(p, a) == gf2_product(p, a));
    }
}

TEST_CASE("property: affine solve equals brute-force preimages (exhaustive up to 4x4)") {
    auto check_all = [](std::size_t rows, std::size_t cols) {
        std::size_t failures = 0;
        for (std::size_t code = 0; code < (std::size_t{1} << (rows * cols)); ++code) {
            BitMatrix a(rows, cols);
            for (std::size_t k = 0; k < rows * cols; ++k)
                if ((code >> k) & 1) a.set(k / cols, k % cols);
            for (std::size_t ycode = 0; ycode < (std::size_t{1} << rows); ++ycode) {
                BitVector y(rows);
                for (std::size_t i = 0; i < rows; ++i)
                    if ((ycode >> i) & 1) y.set(i);
                std::set<std::string> got;
                for (auto& s : gf2_solve_affine(a, y).enumerate()) got.insert(s.to_string());
                if (got != brute_preimages(a, y)) ++failures;
            }
        }
        return failures;
    };
    for (std::size_t r = 1; r <= 4; ++r)
        for (std::size_t c = 1; c <= 4; ++c) CHECK_MESSAGE(check_all(r, c) == 0, r << "x" << c);
}

TEST_CASE("property: matrix_power is additive in the exponent") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 10;
        BitMatrix a = random_matrix(rng, n, n, 0.25);
        std::size_t j = rng() % 6, k = rng() % 6;
        for (Product p : {Product::gf2, Product::boolean})
            CHECK(matrix_power(a, j + k, p) == product(matrix_power(a, j, p), matrix_power(a, k, p), p));
    }
}
