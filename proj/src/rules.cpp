#include "caenc/rules.hpp"

#include <algorithm>

namespace caenc {

namespace {

void check_grid(int m, int n) {
    if (m < 1 || n < 1) throw std::out_of_range("grid dimensions must be positive");
    if (static_cast<std::size_t>(m) * static_cast<std::size_t>(n) > kMaxDimension)
        throw std::length_error("grid of " + std::to_string(m) + "x" + std::to_string(n) + " cells exceeds the " +
                                std::to_string(kMaxDimension) + " cell cap");
}

void require_fundamental(int rule) {
    if (!is_fundamental(rule)) throw std::invalid_argument(std::to_string(rule) + " is not a fundamental rule");
}

// Ones of `mask` (or all ones when empty) along diagonal `offset` above the
// main diagonal.
void place_diagonal(BitMatrix& a, std::size_t offset, const std::string& mask) {
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p + offset < n; ++p)
        if (mask.empty() || mask[p] == '1') a.set(p, p + offset);
}

void place_block(BitMatrix& a, int block_row, int block_col, const BitMatrix& block) {
    const std::size_t bn = block.rows();
    for (std::size_t r = 0; r < bn; ++r)
        for (std::size_t c = 0; c < bn; ++c)
            if (block.get(r, c)) a.set(block_row * bn + r, block_col * bn + c);
}

BitMatrix null_layout(int fundamental, int m, int n) {
    const std::size_t cells = static_cast<std::size_t>(m) * n;
    const std::size_t un = static_cast<std::size_t>(n);
    BitMatrix a(cells, cells);
    switch (fundamental) {
        case 1:
            place_diagonal(a, 0, {});
            break;
        case 2:
            place_diagonal(a, 1, mask_sequence(MaskSequence::s1, n, cells - 1));
            break;
        case 4:
            if (cells > un + 1) place_diagonal(a, un + 1, mask_sequence(MaskSequence::s1, n, cells - un - 1));
            break;
        case 8:
            place_diagonal(a, un, {});
            break;
        case 16:
            if (cells > un - 1) place_diagonal(a, un - 1, mask_sequence(MaskSequence::s2, n, cells - un + 1));
            break;
        default:
            break;
    }
    return a;
}

BitMatrix periodic_layout(int fundamental, int m, int n) {
    const std::size_t cells = static_cast<std::size_t>(m) * n;
    BitMatrix a(cells, cells);
    const BitMatrix ident = BitMatrix::identity(n);
    const BitMatrix t1 = shift_block_t1(n);
    const BitMatrix t2 = shift_block_t2(n);
    // Block (i, i+1 mod m) covers both the block super diagonal and the wrap
    // block in the bottom-left corner.
    for (int i = 0; i < m; ++i) {
        int next = (i + 1) % m;
        switch (fundamental) {
            case 1: place_block(a, i, i, ident); break;
            case 2: place_block(a, i, i, t2); break;
            case 4: place_block(a, i, next, t2); break;
            case 8: place_block(a, i, next, ident); break;
            case 16: place_block(a, i, next, t1); break;
            default: break;
        }
    }
    return a;
}

}  // namespace

std::string_view to_string(Boundary b) { return b == Boundary::null ? "null" : "periodic"; }

Boundary parse_boundary(std::string_view text) {
    if (text == "null") return Boundary::null;
    if (text == "periodic") return Boundary::periodic;
    throw std::invalid_argument("boundary must be 'null' or 'periodic', got '" + std::string(text) + "'");
}

void RuleSpec::validate() const {
    if (rule < 0 || rule > 511) throw std::out_of_range("rule number " + std::to_string(rule) + " outside 0..511");
    check_grid(m, n);
}

bool is_fundamental(int rule) {
    return std::find(kFundamentalRules.begin(), kFundamentalRules.end(), rule) != kFundamentalRules.end();
}

std::vector<int> decompose_rule(int rule) {
    if (rule < 0 || rule > 511) throw std::out_of_range("rule number " + std::to_string(rule) + " outside 0..511");
    std::vector<int> parts;
    for (int f : kFundamentalRules)
        if (rule & f) parts.push_back(f);
    return parts;
}

NeighborOffset neighbor_offset(int fundamental) {
    switch (fundamental) {
        case 1: return {0, 0};
        case 2: return {0, 1};
        case 4: return {1, 1};
        case 8: return {1, 0};
        case 16: return {1, -1};
        case 32: return {0, -1};
        case 64: return {-1, -1};
        case 128: return {-1, 0};
        case 256: return {-1, 1};
        default: break;
    }
    throw std::invalid_argument(std::to_string(fundamental) + " is not a fundamental rule");
}

std::string mask_sequence(MaskSequence kind, int n, std::size_t length) {
    if (n < 1) throw std::out_of_range("mask period must be positive");
    const std::size_t period = static_cast<std::size_t>(n);
    std::string s(length, '1');
    for (std::size_t i = 0; i < length; ++i) {
        std::size_t phase = i % period;
        bool zero = kind == MaskSequence::s1 ? phase == period - 1 : phase == 0;
        if (zero) s[i] = '0';
    }
    return s;
}

BitMatrix shift_block_t1(int n) {
    BitMatrix t(n, n);
    for (int j = 0; j < n; ++j) t.set(j, (j + n - 1) % n);
    return t;
}

BitMatrix shift_block_t2(int n) { return shift_block_t1(n).transpose(); }

BitMatrix fundamental_layout(int fundamental, Boundary boundary, int m, int n) {
    require_fundamental(fundamental);
    check_grid(m, n);
    // 32, 64, 128 and 256 read the opposite neighbour of 2, 4, 8 and 16.
    if (fundamental >= 32) return fundamental_layout(fundamental / 16, boundary, m, n).transpose();
    return boundary == Boundary::null ? null_layout(fundamental, m, n) : periodic_layout(fundamental, m, n);
}

BitMatrix fundamental_by_neighbourhood(int fundamental, Boundary boundary, int m, int n) {
    const NeighborOffset off = neighbor_offset(fundamental);
    check_grid(m, n);
    const std::size_t cells = static_cast<std::size_t>(m) * n;
    BitMatrix a(cells, cells);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            int r = i + off.dr, c = j + off.dc;
            if (boundary == Boundary::periodic) {
                r = (r + m) % m;
                c = (c + n) % n;
            } else if (r < 0 || r >= m || c < 0 || c >= n) {
                continue;
            }
            a.set(static_cast<std::size_t>(i) * n + j, static_cast<std::size_t>(r) * n + c);
        }
    return a;
}

BitMatrix fundamental_matrix(int fundamental, Boundary boundary, int m, int n) {
    BitMatrix layout = fundamental_layout(fundamental, boundary, m, n);
    BitMatrix direct = fundamental_by_neighbourhood(fundamental, boundary, m, n);
    if (layout != direct)
        throw ConstructionMismatch("layout and neighbourhood constructions of rule " + std::to_string(fundamental) +
                                   " disagree on a " + std::to_string(m) + "x" + std::to_string(n) + " " +
                                   std::string(to_string(boundary)) + " grid");
    return layout;
}

BitMatrix rule_matrix(const RuleSpec& spec) {
    spec.validate();
    BitMatrix t(spec.cells(), spec.cells());
    for (int f : decompose_rule(spec.rule)) t ^= fundamental_matrix(f, spec.boundary, spec.m, spec.n);
    return t;
}

}  // namespace caenc
