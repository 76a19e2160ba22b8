#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "caenc/bitmatrix.hpp"
#include "caenc/rules.hpp"

namespace caenc {

// Grids with at most this many cells can have their full state space enumerated.
inline constexpr std::size_t kMaxEnumerableCells = 20;

// An m x n grid of bits, flattened row-major. The decimal value reads the
// flattening as a binary number with cell (1,1) most significant.
class CAState {
public:
    CAState() = default;
    CAState(int m, int n);
    CAState(int m, int n, BitVector bits);

    static CAState from_decimal(int m, int n, std::uint64_t value);
    // Rows of '0'/'1'.
    static CAState from_rows(const std::vector<std::string>& rows);

    int m() const { return m_; }
    int n() const { return n_; }
    std::size_t cells() const { return bits_.size(); }

    bool get(int i, int j) const { return bits_.get(index(i, j)); }
    void set(int i, int j, bool v = true) { bits_.set(index(i, j), v); }
    const BitVector& bits() const { return bits_; }

    // Requires at most 64 cells.
    std::uint64_t decimal() const;
    std::string to_string() const;

    friend bool operator==(const CAState&, const CAState&) = default;

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    int m_ = 0;
    int n_ = 0;
    BitVector bits_;
};

CAState evolve(const CAState& x, const BitMatrix& t);

// State transition diagram over all 2^(mn) states, indexed by decimal value.
struct StateTransitionDiagram {
    int m = 0;
    int n = 0;
    std::vector<std::uint32_t> successor;
    // States lying on a cycle, ascending.
    std::vector<std::uint32_t> attractors;
    // Index into `attractors` of the first cycle state each state reaches.
    std::vector<std::uint32_t> basin_of;
    std::vector<std::uint32_t> depth_of;
    // States without a predecessor, ascending.
    std::vector<std::uint32_t> non_reachable;

    std::uint32_t max_depth() const;
    // Number of states at each depth 0..max_depth.
    std::vector<std::size_t> depth_histogram() const;
};

StateTransitionDiagram build_std(const RuleSpec& spec);
StateTransitionDiagram build_std(const BitMatrix& t, int m, int n);

enum class PefStrategy { linear_algebra, brute_force };

struct MacaProfile {
    RuleSpec spec;
    BitMatrix transform;
    // T^(d+1) == T^d for the smallest such d. Every cycle is then a fixed point.
    bool is_maca = false;
    std::size_t depth = 0;
    std::size_t rank = 0;
    // log2 of the attractor count; the fixed-point space has this dimension.
    std::size_t attractor_bits = 0;
    std::vector<BitVector> attractor_basis;
    std::vector<std::size_t> pef_positions;
    // (cells x attractor_bits) map from PEF bits to the attractor carrying them.
    BitMatrix pef_solver;

    // 2^attractor_bits, saturating at SIZE_MAX.
    std::size_t attractor_count() const;
};

MacaProfile maca_profile(const RuleSpec& spec);

// Smallest set of cell indices on which the span of `basis` projects
// bijectively. linear_algebra picks rank-increasing cells in row-major order;
// brute_force tries every subset of the right size in lexicographic order.
std::vector<std::size_t> pef_positions(const std::vector<BitVector>& basis, std::size_t cells,
                                       PefStrategy strategy = PefStrategy::linear_algebra);

// True when the attractors spanned by `basis` take every value on `positions`.
bool is_pseudo_exhaustive(const std::vector<BitVector>& basis, const std::vector<std::size_t>& positions);

// Evolve `depth` times, then read the PEF cells in order.
BitVector classify(const CAState& x, const MacaProfile& profile);
CAState attractor_from_pef(const MacaProfile& profile, const BitVector& pef);

std::vector<CAState> predecessors(const BitMatrix& t, const CAState& y);

// T^d: one application sends every state to its attractor.
BitMatrix collapse_to_depth_one(const MacaProfile& profile);

// Cross-checks a MACA profile against the exhaustive diagram of the same rule:
// attractors are exactly the fixed points, their count is k, the deepest state
// sits at depth d, reachable states have 2^(mn - rank) predecessors each, and
// the PEF cells are pseudo-exhaustive. Returns one line per violation.
std::vector<std::string> check_profile_against_std(const MacaProfile& profile, const StateTransitionDiagram& diagram);

// MACA rules 0..511 on the grid with at least `min_k` attractors.
std::vector<MacaProfile> find_maca(Boundary boundary, int m, int n, std::size_t min_k = 1);

}  // namespace caenc
