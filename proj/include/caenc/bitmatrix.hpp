#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace caenc {

// Largest row or column count a BitMatrix accepts.
inline constexpr std::size_t kMaxDimension = 4096;

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Bit j lives in word j/64 at position 63 - j%64 (most significant first).
inline constexpr Word bit_mask(std::size_t j) { return Word{1} << (kWordBits - 1 - j % kWordBits); }

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len);

    // From a '0'/'1' string, first character is bit 0.
    static BitVector from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const { return (words_[i / kWordBits] & bit_mask(i)) != 0; }
    void set(std::size_t i, bool v = true) {
        if (v)
            words_[i / kWordBits] |= bit_mask(i);
        else
            words_[i / kWordBits] &= ~bit_mask(i);
    }
    void flip(std::size_t i) { words_[i / kWordBits] ^= bit_mask(i); }

    std::size_t popcount() const;
    bool none() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::span<const Word> words() const { return words_; }
    std::string to_string() const;

private:
    std::size_t len_ = 0;
    std::vector<Word> words_;
};

// Dense row-major binary matrix. The shape is fixed at construction; bits may
// be written while building but every arithmetic operation returns a new value.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    // Rows given as '0'/'1' strings of equal length.
    static BitMatrix from_rows(const std::vector<std::string>& rows);
    static BitMatrix column(const BitVector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    bool get(std::size_t r, std::size_t c) const { return (row_words(r)[c / kWordBits] & bit_mask(c)) != 0; }
    void set(std::size_t r, std::size_t c, bool v = true) {
        Word& w = words_[r * stride_ + c / kWordBits];
        if (v)
            w |= bit_mask(c);
        else
            w &= ~bit_mask(c);
    }

    std::span<const Word> row_words(std::size_t r) const { return {words_.data() + r * stride_, stride_}; }
    BitVector row(std::size_t r) const;
    BitVector col(std::size_t c) const;

    BitMatrix transpose() const;
    std::size_t popcount() const;
    bool is_zero() const;

    BitMatrix& operator^=(const BitMatrix& other);
    friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    std::size_t hash() const;

    // "rows cols" line, then one line of '0'/'1' per row.
    std::string dump() const;
    static BitMatrix parse_dump(std::string_view text);

private:
    std::span<Word> mutable_row(std::size_t r) { return {words_.data() + r * stride_, stride_}; }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> words_;

    friend BitMatrix bool_product(const BitMatrix&, const BitMatrix&);
    friend BitMatrix gf2_product(const BitMatrix&, const BitMatrix&);
};

struct BitMatrixHash {
    std::size_t operator()(const BitMatrix& m) const { return m.hash(); }
};

std::ostream& operator<<(std::ostream& os, const BitMatrix& m);
std::ostream& operator<<(std::ostream& os, const BitVector& v);

enum class Product { gf2, boolean };

// c_ij = OR_k (a_ik AND b_kj)
BitMatrix bool_product(const BitMatrix& a, const BitMatrix& b);
// c_ij = XOR_k (a_ik AND b_kj)
BitMatrix gf2_product(const BitMatrix& a, const BitMatrix& b);
BitMatrix product(const BitMatrix& a, const BitMatrix& b, Product kind);

// Matrix-vector forms of the two products.
BitVector gf2_apply(const BitMatrix& a, const BitVector& x);
BitVector bool_apply(const BitMatrix& a, const BitVector& x);

BitMatrix matrix_power(const BitMatrix& a, std::size_t k, Product kind);

std::size_t gf2_rank(const BitMatrix& a);

// Solutions of a*x = y over GF(2): particular + span(kernel_basis), or none.
struct AffineSolutionSet {
    std::optional<BitVector> particular;
    std::vector<BitVector> kernel_basis;

    bool empty() const { return !particular.has_value(); }
    // 2^dim(kernel) when consistent, else 0. Saturates at SIZE_MAX.
    std::size_t count() const;
    // All solutions, ordered by the binary counter over kernel_basis.
    std::vector<BitVector> enumerate(std::size_t limit = std::size_t{1} << 20) const;
};

AffineSolutionSet gf2_solve_affine(const BitMatrix& a, const BitVector& y);

// Basis of {x : a*x = 0}, one vector per free column in ascending order.
std::vector<BitVector> gf2_kernel(const BitMatrix& a);

std::optional<BitMatrix> gf2_inverse(const BitMatrix& a);

bool is_permutation(const BitMatrix& a);

}  // namespace caenc
