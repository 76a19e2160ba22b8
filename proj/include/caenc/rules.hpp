#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "caenc/bitmatrix.hpp"

namespace caenc {

enum class Boundary { null, periodic };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

// Linear nine-neighbourhood rule on an m x n grid. Bit k of the rule number
// selects the k-th fundamental dependency (1, 2, 4, ..., 256):
//
//     64 128 256
//     32   1   2
//     16   8   4
struct RuleSpec {
    int rule = 0;
    Boundary boundary = Boundary::null;
    int m = 1;
    int n = 1;

    std::size_t cells() const { return static_cast<std::size_t>(m) * static_cast<std::size_t>(n); }
    // Throws std::out_of_range or std::length_error.
    void validate() const;

    friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

inline constexpr std::array<int, 9> kFundamentalRules = {1, 2, 4, 8, 16, 32, 64, 128, 256};

bool is_fundamental(int rule);

// Row delta +1 is the row below, column delta +1 the column to the right.
struct NeighborOffset {
    int dr = 0;
    int dc = 0;
    friend bool operator==(const NeighborOffset&, const NeighborOffset&) = default;
};

// Fundamental rules whose sum is `rule`, ascending.
std::vector<int> decompose_rule(int rule);

NeighborOffset neighbor_offset(int fundamental);

enum class MaskSequence { s1, s2 };

// s1 repeats (n-1 ones, one zero); s2 repeats (one zero, n-1 ones). Truncated
// to `length` characters.
std::string mask_sequence(MaskSequence kind, int n, std::size_t length);

// Thrown when the diagonal/block layout and the neighbourhood construction of a
// fundamental matrix disagree.
class ConstructionMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Two independent constructions of the same matrix. fundamental_matrix builds
// both and throws ConstructionMismatch if they differ.
BitMatrix fundamental_layout(int fundamental, Boundary boundary, int m, int n);
BitMatrix fundamental_by_neighbourhood(int fundamental, Boundary boundary, int m, int n);
BitMatrix fundamental_matrix(int fundamental, Boundary boundary, int m, int n);

// Cyclic shift blocks used by the periodic layout: t1 has its ones at
// (j, j-1 mod n), t2 is its transpose.
BitMatrix shift_block_t1(int n);
BitMatrix shift_block_t2(int n);

// GF(2) sum of the fundamental matrices selected by spec.rule.
BitMatrix rule_matrix(const RuleSpec& spec);

}  // namespace caenc
