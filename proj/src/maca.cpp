#include "caenc/maca.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace caenc {

// ---- CAState ----

CAState::CAState(int m, int n) : m_(m), n_(n) {
    if (m < 1 || n < 1) throw std::out_of_range("grid dimensions must be positive");
    bits_ = BitVector(static_cast<std::size_t>(m) * n);
}

CAState::CAState(int m, int n, BitVector bits) : m_(m), n_(n), bits_(std::move(bits)) {
    if (m < 1 || n < 1) throw std::out_of_range("grid dimensions must be positive");
    if (bits_.size() != static_cast<std::size_t>(m) * n) throw std::invalid_argument("state bits do not match grid");
}

CAState CAState::from_decimal(int m, int n, std::uint64_t value) {
    CAState s(m, n);
    const std::size_t cells = s.cells();
    if (cells > 64) throw std::out_of_range("decimal states need at most 64 cells");
    if (cells < 64 && (value >> cells) != 0) throw std::out_of_range("state value too large for the grid");
    for (std::size_t p = 0; p < cells; ++p)
        if ((value >> (cells - 1 - p)) & 1) s.bits_.set(p);
    return s;
}

CAState CAState::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty state");
    CAState s(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < s.m_; ++i) {
        if (rows[i].size() != static_cast<std::size_t>(s.n_)) throw std::invalid_argument("ragged state rows");
        for (int j = 0; j < s.n_; ++j) {
            if (rows[i][j] == '1')
                s.set(i, j);
            else if (rows[i][j] != '0')
                throw std::invalid_argument("state rows may only contain '0' and '1'");
        }
    }
    return s;
}

std::uint64_t CAState::decimal() const {
    if (cells() > 64) throw std::out_of_range("decimal states need at most 64 cells");
    std::uint64_t v = 0;
    for (std::size_t p = 0; p < cells(); ++p) v = (v << 1) | (bits_.get(p) ? 1u : 0u);
    return v;
}

std::string CAState::to_string() const {
    std::string s;
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < n_; ++j) s.push_back(get(i, j) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

CAState evolve(const CAState& x, const BitMatrix& t) {
    if (t.rows() != x.cells() || t.cols() != x.cells())
        throw std::invalid_argument("transformation matrix does not match the state grid");
    return CAState(x.m(), x.n(), gf2_apply(t, x.bits()));
}

// ---- state transition diagram ----

std::uint32_t StateTransitionDiagram::max_depth() const {
    return depth_of.empty() ? 0 : *std::max_element(depth_of.begin(), depth_of.end());
}

std::vector<std::size_t> StateTransitionDiagram::depth_histogram() const {
    std::vector<std::size_t> h(max_depth() + 1, 0);
    for (auto d : depth_of) ++h[d];
    return h;
}

StateTransitionDiagram build_std(const BitMatrix& t, int m, int n) {
    const std::size_t cells = static_cast<std::size_t>(m) * n;
    if (cells > kMaxEnumerableCells)
        throw std::length_error("state transition diagram limited to " + std::to_string(kMaxEnumerableCells) +
                                " cells, grid has " + std::to_string(cells));
    if (t.rows() != cells || !t.square()) throw std::invalid_argument("transformation matrix does not match the grid");

    // Image of each single-cell state, as a decimal value.
    std::vector<std::uint32_t> column(cells, 0);
    for (std::size_t q = 0; q < cells; ++q)
        for (std::size_t p = 0; p < cells; ++p)
            if (t.get(p, q)) column[q] |= std::uint32_t{1} << (cells - 1 - p);

    StateTransitionDiagram d;
    d.m = m;
    d.n = n;
    const std::size_t total = std::size_t{1} << cells;
    d.successor.assign(total, 0);
    for (std::size_t s = 1; s < total; ++s) {
        unsigned low = static_cast<unsigned>(__builtin_ctzll(s));
        d.successor[s] = d.successor[s & (s - 1)] ^ column[cells - 1 - low];
    }

    std::vector<std::uint32_t> indegree(total, 0);
    for (auto s : d.successor) ++indegree[s];
    for (std::size_t s = 0; s < total; ++s)
        if (indegree[s] == 0) d.non_reachable.push_back(static_cast<std::uint32_t>(s));

    // Peel states of in-degree zero; what survives lies on cycles.
    std::vector<std::uint32_t> order = d.non_reachable;
    order.reserve(total);
    std::vector<std::uint32_t> remaining = indegree;
    for (std::size_t head = 0; head < order.size(); ++head) {
        std::uint32_t next = d.successor[order[head]];
        if (--remaining[next] == 0) order.push_back(next);
    }
    std::vector<bool> on_cycle(total, true);
    for (auto s : order) on_cycle[s] = false;

    d.basin_of.assign(total, 0);
    d.depth_of.assign(total, 0);
    for (std::size_t s = 0; s < total; ++s)
        if (on_cycle[s]) {
            d.basin_of[s] = static_cast<std::uint32_t>(d.attractors.size());
            d.attractors.push_back(static_cast<std::uint32_t>(s));
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::uint32_t next = d.successor[*it];
        d.depth_of[*it] = d.depth_of[next] + 1;
        d.basin_of[*it] = d.basin_of[next];
    }
    return d;
}

StateTransitionDiagram build_std(const RuleSpec& spec) {
    spec.validate();
    if (spec.cells() > kMaxEnumerableCells)
        throw std::length_error("state transition diagram limited to " + std::to_string(kMaxEnumerableCells) +
                                " cells, grid has " + std::to_string(spec.cells()));
    return build_std(rule_matrix(spec), spec.m, spec.n);
}

// ---- profile ----

std::size_t MacaProfile::attractor_count() const {
    if (attractor_bits >= std::numeric_limits<std::size_t>::digits) return std::numeric_limits<std::size_t>::max();
    return std::size_t{1} << attractor_bits;
}

namespace {

// Incremental GF(2) echelon set over fixed-length vectors.
class EchelonSet {
public:
    explicit EchelonSet(std::size_t len) : len_(len) {}

    // Adds v if it is independent of the set; reports whether it was.
    bool insert(BitVector v) {
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (v.get(pivots_[k])) v ^= rows_[k];
        for (std::size_t i = 0; i < len_; ++i)
            if (v.get(i)) {
                rows_.push_back(std::move(v));
                pivots_.push_back(i);
                return true;
            }
        return false;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    std::size_t len_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

BitVector column_of(const std::vector<BitVector>& basis, std::size_t cell) {
    BitVector v(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].get(cell)) v.set(i);
    return v;
}

std::vector<std::size_t> greedy_positions(const std::vector<BitVector>& basis, std::size_t cells) {
    std::vector<std::size_t> chosen;
    EchelonSet set(basis.size());
    for (std::size_t c = 0; c < cells && chosen.size() < basis.size(); ++c)
        if (set.insert(column_of(basis, c))) chosen.push_back(c);
    return chosen;
}

// Every element of span(basis), ordered by the binary counter over the basis.
std::vector<BitVector> span_of(const std::vector<BitVector>& basis, std::size_t cells) {
    if (basis.size() > kMaxEnumerableCells) throw std::length_error("attractor space too large to enumerate");
    std::vector<BitVector> out(std::size_t{1} << basis.size(), BitVector(cells));
    for (std::size_t mask = 1; mask < out.size(); ++mask) {
        std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        out[mask] = out[mask & (mask - 1)] ^ basis[low];
    }
    return out;
}

bool projection_bijective(const std::vector<BitVector>& span, const std::vector<std::size_t>& positions) {
    std::vector<bool> seen(std::size_t{1} << positions.size(), false);
    for (const auto& v : span) {
        std::size_t key = 0;
        for (auto p : positions) key = (key << 1) | (v.get(p) ? 1u : 0u);
        if (seen[key]) return false;
        seen[key] = true;
    }
    return true;
}

std::vector<std::size_t> brute_force_positions(const std::vector<BitVector>& basis, std::size_t cells) {
    const std::size_t size = basis.size();
    if (size == 0) return {};
    auto span = span_of(basis, cells);
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
        if (projection_bijective(span, pick)) return pick;
        // Next combination in lexicographic order.
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == cells - size + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    throw std::logic_error("no pseudo-exhaustive position set found for an independent basis");
}

}  // namespace

std::vector<std::size_t> pef_positions(const std::vector<BitVector>& basis, std::size_t cells, PefStrategy strategy) {
    for (const auto& b : basis)
        if (b.size() != cells) throw std::invalid_argument("basis vector length does not match the cell count");
    if (strategy == PefStrategy::brute_force) return brute_force_positions(basis, cells);
    auto chosen = greedy_positions(basis, cells);
    if (chosen.size() != basis.size()) throw std::invalid_argument("attractor basis is linearly dependent");
    return chosen;
}

bool is_pseudo_exhaustive(const std::vector<BitVector>& basis, const std::vector<std::size_t>& positions) {
    if (positions.size() != basis.size()) return false;
    if (basis.empty()) return true;
    return projection_bijective(span_of(basis, basis.front().size()), positions);
}

MacaProfile maca_profile(const RuleSpec& spec) {
    spec.validate();
    MacaProfile p;
    p.spec = spec;
    p.transform = rule_matrix(spec);
    const std::size_t cells = spec.cells();
    const BitMatrix& t = p.transform;
    p.rank = gf2_rank(t);

    // Rank of T^k drops strictly until it settles at some k0. T is eventually
    // idempotent exactly when T^(k0+1) == T^k0, and then d = k0.
    BitMatrix power = BitMatrix::identity(cells);
    std::size_t power_rank = cells;
    for (std::size_t k = 0; k <= cells; ++k) {
        BitMatrix next = gf2_product(power, t);
        std::size_t next_rank = k == 0 ? p.rank : gf2_rank(next);
        if (next_rank == power_rank) {
            if (next == power) {
                p.is_maca = true;
                p.depth = k;
            }
            break;
        }
        power = std::move(next);
        power_rank = next_rank;
    }
    if (!p.is_maca) return p;

    p.attractor_basis = gf2_kernel(t ^ BitMatrix::identity(cells));
    p.attractor_bits = p.attractor_basis.size();
    p.pef_positions = pef_positions(p.attractor_basis, cells, PefStrategy::linear_algebra);

    // attractor = B * Q^-1 * pef, with B the basis as columns and Q its rows
    // at the PEF cells.
    const std::size_t dim = p.attractor_bits;
    p.pef_solver = BitMatrix(cells, dim);
    if (dim > 0) {
        BitMatrix basis_cols(cells, dim);
        BitMatrix q(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t c = 0; c < cells; ++c)
                if (p.attractor_basis[i].get(c)) basis_cols.set(c, i);
            for (std::size_t j = 0; j < dim; ++j)
                if (p.attractor_basis[i].get(p.pef_positions[j])) q.set(j, i);
        }
        auto q_inv = gf2_inverse(q);
        if (!q_inv) throw std::logic_error("PEF projection is not invertible");
        p.pef_solver = gf2_product(basis_cols, *q_inv);
    }
    return p;
}

BitVector classify(const CAState& x, const MacaProfile& profile) {
    if (!profile.is_maca) throw std::invalid_argument("classify needs a MACA profile");
    CAState cur = x;
    for (std::size_t step = 0; step < profile.depth; ++step) cur = evolve(cur, profile.transform);
    BitVector pef(profile.pef_positions.size());
    for (std::size_t j = 0; j < profile.pef_positions.size(); ++j)
        if (cur.bits().get(profile.pef_positions[j])) pef.set(j);
    return pef;
}

CAState attractor_from_pef(const MacaProfile& profile, const BitVector& pef) {
    if (!profile.is_maca) throw std::invalid_argument("attractor_from_pef needs a MACA profile");
    if (pef.size() != profile.attractor_bits)
        throw std::invalid_argument("PEF has " + std::to_string(pef.size()) + " bits, profile expects " +
                                    std::to_string(profile.attractor_bits));
    return CAState(profile.spec.m, profile.spec.n, gf2_apply(profile.pef_solver, pef));
}

std::vector<CAState> predecessors(const BitMatrix& t, const CAState& y) {
    if (y.cells() > kMaxEnumerableCells)
        throw std::length_error("predecessor enumeration limited to " + std::to_string(kMaxEnumerableCells) + " cells");
    auto solutions = gf2_solve_affine(t, y.bits());
    std::vector<CAState> out;
    for (auto& v : solutions.enumerate()) out.emplace_back(y.m(), y.n(), std::move(v));
    return out;
}

BitMatrix collapse_to_depth_one(const MacaProfile& profile) {
    if (!profile.is_maca) throw std::invalid_argument("collapse_to_depth_one needs a MACA profile");
    return matrix_power(profile.transform, profile.depth, Product::gf2);
}

std::vector<std::string> check_profile_against_std(const MacaProfile& profile, const StateTransitionDiagram& d) {
    std::vector<std::string> bad;
    const std::size_t cells = profile.spec.cells();
    const std::string where = "rule " + std::to_string(profile.spec.rule) + " " +
                              std::string(to_string(profile.spec.boundary)) + " " + std::to_string(profile.spec.m) +
                              "x" + std::to_string(profile.spec.n) + ": ";
    for (auto a : d.attractors)
        if (d.successor[a] != a) bad.push_back(where + "attractor " + std::to_string(a) + " is not a fixed point");
    if (d.attractors.size() != profile.attractor_count())
        bad.push_back(where + std::to_string(d.attractors.size()) + " attractors, profile says " +
                      std::to_string(profile.attractor_count()));
    if (d.max_depth() != profile.depth)
        bad.push_back(where + "max depth " + std::to_string(d.max_depth()) + ", profile says " +
                      std::to_string(profile.depth));

    std::vector<std::uint32_t> preds(d.successor.size(), 0);
    for (auto s : d.successor) ++preds[s];
    const std::uint32_t expected = std::uint32_t{1} << (cells - profile.rank);
    for (std::size_t s = 0; s < preds.size(); ++s)
        if (preds[s] != 0 && preds[s] != expected) {
            bad.push_back(where + "state " + std::to_string(s) + " has " + std::to_string(preds[s]) +
                          " predecessors, expected " + std::to_string(expected));
            break;
        }

    std::vector<bool> seen(std::size_t{1} << profile.pef_positions.size(), false);
    for (auto a : d.attractors) {
        std::size_t key = 0;
        for (auto p : profile.pef_positions) key = (key << 1) | ((a >> (cells - 1 - p)) & 1u);
        if (key < seen.size()) seen[key] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        bad.push_back(where + "PEF cells are not pseudo-exhaustive");
    return bad;
}

std::vector<MacaProfile> find_maca(Boundary boundary, int m, int n, std::size_t min_k) {
    std::vector<MacaProfile> out;
    for (int rule = 0; rule <= 511; ++rule) {
        MacaProfile p = maca_profile({rule, boundary, m, n});
        if (p.is_maca && p.attractor_count() >= min_k) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace caenc
