#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "caenc/bitmatrix.hpp"
#include "caenc/errors.hpp"
#include "caenc/maca.hpp"
#include "caenc/rules.hpp"

namespace caenc {

// Shared secret: block size and MACA rule for compression, translation
// exponents for encryption. The exponents are reduced modulo the PEF matrix
// dimensions when used.
struct Key {
    int block_m = 1;
    int block_n = 1;
    Boundary boundary = Boundary::null;
    int rule = 0;
    int enc_a = 0;
    int enc_b = 0;

    RuleSpec maca_rule() const { return {rule, boundary, block_m, block_n}; }
    friend bool operator==(const Key&, const Key&) = default;
};

class InvalidKey : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Profile of the key's rule. Throws InvalidKey unless the rule is a MACA with
// at least two attractors at the block size.
MacaProfile key_profile(const Key& key);

struct Layout {
    int image_m = 0;
    int image_n = 0;
    int padded_m = 0;
    int padded_n = 0;
    std::size_t blocks = 0;
    std::size_t bits_per_block = 0;
    std::size_t pef_len = 0;
    int p = 0;
    int q = 0;

    std::size_t payload_bits() const { return static_cast<std::size_t>(p) * q; }
    std::size_t pad_bits() const { return payload_bits() - pef_len; }
    friend bool operator==(const Layout&, const Layout&) = default;
};

Layout plan_layout(int image_m, int image_n, const Key& key);
Layout plan_layout(int image_m, int image_n, const Key& key, const MacaProfile& profile);

struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Ratio reduced(std::uint64_t num, std::uint64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

// ceil(lg k) / (block_m * block_n)
Ratio compression_ratio(const Key& key);
Ratio compression_ratio(const MacaProfile& profile);

struct Distortion {
    std::size_t hamming = 0;
    double rate = 0.0;
};

Distortion distortion(const CAState& a, const CAState& b);

// Wire format, all integers big-endian:
//   0..3 "CAEC" | 4 version | 5..6 image_m | 7..8 image_n | 9 block_m |
//   10 block_n | 11..14 PEF bit length | 15..16 p | 17..18 q | payload
// The payload holds p*q bits, row-major, most significant bit first, with the
// final byte zero-padded.
struct EncompressedContainer {
    static constexpr std::array<char, 4> kMagic = {'C', 'A', 'E', 'C'};
    static constexpr std::uint8_t kVersion = 1;
    static constexpr std::size_t kHeaderSize = 19;

    std::uint16_t image_m = 0;
    std::uint16_t image_n = 0;
    std::uint8_t block_m = 0;
    std::uint8_t block_n = 0;
    std::uint32_t pef_len = 0;
    std::uint16_t p = 0;
    std::uint16_t q = 0;
    BitVector payload;

    std::vector<std::uint8_t> serialize() const;
    // Throws FormatError.
    static EncompressedContainer parse(std::span<const std::uint8_t> bytes);

    friend bool operator==(const EncompressedContainer&, const EncompressedContainer&) = default;
};

// Cyclic translation of a p x q bit grid: out(i,j) = in(i+a mod p, j+b mod q).
// Applied through the Boolean product with translation_matrix while p*q fits
// the matrix cap, as a direct index permutation beyond it.
BitVector apply_translation(const BitVector& grid, int a, int b, int p, int q);

// Holds a validated key and its profile so each image reuses them.
class Encompressor {
public:
    explicit Encompressor(Key key);

    const Key& key() const { return key_; }
    const MacaProfile& profile() const { return profile_; }

    Layout plan(int image_m, int image_n) const { return plan_layout(image_m, image_n, key_, profile_); }

    // Per-block PEF bits, blocks in row-major order: pef_len bits.
    BitVector compress(const CAState& image, const Layout& layout) const;
    // Zero-pads to p*q bits and applies the key's translation.
    BitVector encrypt(const BitVector& pef_stream, const Layout& layout) const;
    // Inverse translation, then drops the pad bits.
    BitVector decrypt(const BitVector& payload, const Layout& layout) const;
    // Rebuilds each block as the attractor named by its PEF bits; crops padding.
    // A block overhanging the image edge whose attractor has ones in the
    // overhang is rebuilt as a basin member that is zero there instead, so
    // the cropped block still classifies the same.
    CAState decompress(const BitVector& pef_stream, const Layout& layout) const;

    EncompressedContainer encompress(const CAState& image) const;
    CAState dencompress(const EncompressedContainer& container) const;

private:
    Key key_;
    MacaProfile profile_;
    BitMatrix collapse_;
};

EncompressedContainer encompress(const CAState& image, const Key& key);
CAState dencompress(const EncompressedContainer& container, const Key& key);

}  // namespace caenc
