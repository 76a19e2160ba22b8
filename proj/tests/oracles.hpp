#pragma once

// Brute-force reference implementations used only by tests. Nothing here may
// include library headers: these are the independent side of every
// cross-check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<int>>;

// Fig-1 layout, read row by row from the top:
//    64 128 256
//    32   1   2
//    16   8   4
inline constexpr std::array<std::array<int, 3>, 3> kRuleGrid = {{
    {64, 128, 256},
    {32, 1, 2},
    {16, 8, 4},
}};

// (dr, dc) of the neighbour selected by a fundamental rule bit.
inline std::pair<int, int> offset_of(int fundamental) {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (kRuleGrid[r][c] == fundamental) return {r - 1, c - 1};
    return {99, 99};
}

inline Mat zeros(int r, int c) { return Mat(r, std::vector<int>(c, 0)); }

inline Mat identity(int n) {
    Mat a = zeros(n, n);
    for (int i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

// Cell value read by (i, j) through offset (dr, dc), or -1 when the read falls
// off a null-boundary grid.
inline int neighbour_index(int i, int j, int dr, int dc, bool periodic, int m, int n) {
    int r = i + dr, c = j + dc;
    if (periodic) {
        r = ((r % m) + m) % m;
        c = ((c % n) + n) % n;
    } else if (r < 0 || r >= m || c < 0 || c >= n) {
        return -1;
    }
    return r * n + c;
}

// Next state by direct per-cell evaluation: XOR of the selected neighbours.
inline std::vector<int> step(int rule, bool periodic, int m, int n, const std::vector<int>& x) {
    std::vector<int> out(m * n, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            int v = 0;
            for (int bit = 0; bit < 9; ++bit) {
                if (!((rule >> bit) & 1)) continue;
                auto [dr, dc] = offset_of(1 << bit);
                int q = neighbour_index(i, j, dr, dc, periodic, m, n);
                if (q >= 0) v ^= x[q];
            }
            out[i * n + j] = v;
        }
    return out;
}

// Transformation matrix built column by column from the images of unit states.
inline Mat rule_matrix(int rule, bool periodic, int m, int n) {
    int N = m * n;
    Mat t = zeros(N, N);
    for (int q = 0; q < N; ++q) {
        std::vector<int> e(N, 0);
        e[q] = 1;
        auto img = step(rule, periodic, m, n, e);
        for (int p = 0; p < N; ++p) t[p][q] = img[p];
    }
    return t;
}

inline Mat bool_mul(const Mat& a, const Mat& b) {
    int r = static_cast<int>(a.size()), c = static_cast<int>(b[0].size()), k = static_cast<int>(b.size());
    Mat out = zeros(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            for (int t = 0; t < k; ++t)
                if (a[i][t] && b[t][j]) {
                    out[i][j] = 1;
                    break;
                }
    return out;
}

inline Mat xor_mul(const Mat& a, const Mat& b) {
    int r = static_cast<int>(a.size()), c = static_cast<int>(b[0].size()), k = static_cast<int>(b.size());
    Mat out = zeros(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            int v = 0;
            for (int t = 0; t < k; ++t) v ^= a[i][t] & b[t][j];
            out[i][j] = v;
        }
    return out;
}

// Fixpoint iteration: keep multiplying every known element by every other
// until nothing new appears.
inline std::set<Mat> closure(const std::vector<Mat>& gens) {
    std::set<Mat> s(gens.begin(), gens.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Mat> cur(s.begin(), s.end());
        for (const auto& a : cur)
            for (const auto& b : cur)
                if (s.insert(bool_mul(a, b)).second) grew = true;
    }
    return s;
}

inline std::vector<Mat> basic_generators(bool periodic, int m, int n) {
    return {rule_matrix(1, periodic, m, n), rule_matrix(2, periodic, m, n), rule_matrix(4, periodic, m, n),
            rule_matrix(8, periodic, m, n), rule_matrix(16, periodic, m, n)};
}

// Row-major decimal numbering, cell (1,1) most significant.
inline std::vector<int> bits_of(uint32_t state, int N) {
    std::vector<int> x(N);
    for (int p = 0; p < N; ++p) x[p] = (state >> (N - 1 - p)) & 1;
    return x;
}

inline uint32_t state_of(const std::vector<int>& x) {
    uint32_t s = 0;
    for (int v : x) s = (s << 1) | static_cast<uint32_t>(v);
    return s;
}

// Full successor table. Each column image comes from per-cell evaluation of a
// unit state; linearity then gives every successor as an XOR of columns.
inline std::vector<uint32_t> successor_table(int rule, bool periodic, int m, int n) {
    int N = m * n;
    std::vector<uint32_t> col(N);
    for (int q = 0; q < N; ++q) col[q] = state_of(step(rule, periodic, m, n, bits_of(1u << (N - 1 - q), N)));
    std::vector<uint32_t> succ(std::size_t{1} << N, 0);
    for (uint32_t s = 1; s < succ.size(); ++s) {
        int low = __builtin_ctz(s);
        succ[s] = succ[s & (s - 1)] ^ col[N - 1 - low];
    }
    return succ;
}

inline std::vector<uint32_t> preimage_counts(const std::vector<uint32_t>& succ) {
    std::vector<uint32_t> cnt(succ.size(), 0);
    for (uint32_t s : succ) ++cnt[s];
    return cnt;
}

// Steps until a state's orbit revisits a state. Returns false when some orbit
// ends in a cycle longer than one.
inline bool fixed_point_depths(const std::vector<uint32_t>& succ, std::vector<int>& depth) {
    depth.assign(succ.size(), -1);
    for (uint32_t s = 0; s < succ.size(); ++s) {
        uint32_t x = s;
        int d = 0;
        std::set<uint32_t> seen;
        while (succ[x] != x) {
            if (!seen.insert(x).second) return false;
            x = succ[x];
            ++d;
        }
        depth[s] = d;
    }
    return true;
}

inline bool pseudo_exhaustive(const std::vector<uint32_t>& attractors, const std::vector<int>& positions, int N) {
    std::set<uint32_t> seen;
    for (uint32_t a : attractors) {
        uint32_t proj = 0;
        for (int p : positions) proj = (proj << 1) | ((a >> (N - 1 - p)) & 1);
        seen.insert(proj);
    }
    return seen.size() == (std::size_t{1} << positions.size()) && seen.size() == attractors.size();
}

}  // namespace oracle
