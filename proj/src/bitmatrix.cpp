#include "caenc/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace caenc {

namespace {

void check_cap(std::size_t rows, std::size_t cols) {
    if (rows > kMaxDimension || cols > kMaxDimension)
        throw std::length_error("bit matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " exceeds the " + std::to_string(kMaxDimension) + " dimension cap");
}

void require_product_dims(const BitMatrix& a, const BitMatrix& b, const char* what) {
    if (a.cols() != b.rows())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
}

// Row storage for elimination: rows of `width` bits, packed like BitMatrix.
struct Rows {
    std::size_t width;
    std::size_t stride;
    std::vector<Word> data;

    Rows(std::size_t count, std::size_t width_bits)
        : width(width_bits), stride(words_for(width_bits)), data(count * stride, 0) {}

    Word* row(std::size_t r) { return data.data() + r * stride; }
    bool get(std::size_t r, std::size_t c) { return (row(r)[c / kWordBits] & bit_mask(c)) != 0; }
    void set(std::size_t r, std::size_t c) { row(r)[c / kWordBits] |= bit_mask(c); }
    void xor_into(std::size_t dst, std::size_t src) {
        Word* d = row(dst);
        const Word* s = row(src);
        for (std::size_t w = 0; w < stride; ++w) d[w] ^= s[w];
    }
    void swap_rows(std::size_t a, std::size_t b) { std::swap_ranges(row(a), row(a) + stride, row(b)); }
};

Rows load(const BitMatrix& a, std::size_t extra_cols) {
    Rows rows(a.rows(), a.cols() + extra_cols);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) rows.set(r, c);
    return rows;
}

// Reduces the first `ncols` columns to reduced row echelon form. Pivot for each
// column is the lowest-index remaining row holding a 1. Returns pivot columns.
std::vector<std::size_t> reduce(Rows& rows, std::size_t nrows, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t c = 0; c < ncols && top < nrows; ++c) {
        std::size_t r = top;
        while (r < nrows && !rows.get(r, c)) ++r;
        if (r == nrows) continue;
        if (r != top) rows.swap_rows(r, top);
        for (std::size_t other = 0; other < nrows; ++other)
            if (other != top && rows.get(other, c)) rows.xor_into(other, top);
        pivots.push_back(c);
        ++top;
    }
    return pivots;
}

}  // namespace

// ---- BitVector ----

BitVector::BitVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    return v;
}

std::size_t BitVector::popcount() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool BitVector::none() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_) throw std::invalid_argument("bit vector xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

// ---- BitMatrix ----

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)) {
    check_cap(rows, cols);
    words_.assign(rows_ * stride_, 0);
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix needs at least one row");
    BitMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols_; ++c) {
            char ch = rows[r][c];
            if (ch == '1')
                m.set(r, c);
            else if (ch != '0')
                throw std::invalid_argument("matrix rows may only contain '0' and '1'");
        }
    }
    return m;
}

BitMatrix BitMatrix::column(const BitVector& v) {
    BitMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) m.set(i, 0);
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) v.set(c);
    return v;
}

BitVector BitMatrix::col(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r);
    return v;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r);
    return t;
}

std::size_t BitMatrix::popcount() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool BitMatrix::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix xor: dimension mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

std::size_t BitMatrix::hash() const {
    // FNV-1a over the packed words, seeded by the shape.
    std::uint64_t h = 1469598103934665603ull ^ (rows_ * 0x9e3779b97f4a7c15ull) ^ cols_;
    for (Word w : words_) {
        h ^= w;
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::string BitMatrix::dump() const {
    std::string out = std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
    out.reserve(out.size() + rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

BitMatrix BitMatrix::parse_dump(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows == 0 || cols == 0) throw std::invalid_argument("bad matrix dump header");
    std::vector<std::string> lines(rows);
    for (auto& line : lines)
        if (!(in >> line)) throw std::invalid_argument("truncated matrix dump");
    BitMatrix m = from_rows(lines);
    if (m.cols() != cols) throw std::invalid_argument("matrix dump row width disagrees with header");
    return m;
}

std::ostream& operator<<(std::ostream& os, const BitMatrix& m) { return os << m.dump(); }
std::ostream& operator<<(std::ostream& os, const BitVector& v) { return os << v.to_string(); }

// ---- products ----

BitMatrix bool_product(const BitMatrix& a, const BitMatrix& b) {
    require_product_dims(a, b, "bool_product");
    BitMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        Word* out = c.words_.data() + i * c.stride_;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (!a.get(i, k)) continue;
            const Word* src = b.words_.data() + k * b.stride_;
            for (std::size_t w = 0; w < c.stride_; ++w) out[w] |= src[w];
        }
    }
    return c;
}

BitMatrix gf2_product(const BitMatrix& a, const BitMatrix& b) {
    require_product_dims(a, b, "gf2_product");
    BitMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        Word* out = c.words_.data() + i * c.stride_;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (!a.get(i, k)) continue;
            const Word* src = b.words_.data() + k * b.stride_;
            for (std::size_t w = 0; w < c.stride_; ++w) out[w] ^= src[w];
        }
    }
    return c;
}

BitMatrix product(const BitMatrix& a, const BitMatrix& b, Product kind) {
    return kind == Product::gf2 ? gf2_product(a, b) : bool_product(a, b);
}

BitVector gf2_apply(const BitMatrix& a, const BitVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("gf2_apply: dimension mismatch");
    BitVector y(a.rows());
    auto xw = x.words();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto rw = a.row_words(r);
        Word acc = 0;
        for (std::size_t w = 0; w < rw.size(); ++w) acc ^= rw[w] & xw[w];
        if (std::popcount(acc) & 1) y.set(r);
    }
    return y;
}

BitVector bool_apply(const BitMatrix& a, const BitVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("bool_apply: dimension mismatch");
    BitVector y(a.rows());
    auto xw = x.words();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto rw = a.row_words(r);
        for (std::size_t w = 0; w < rw.size(); ++w)
            if (rw[w] & xw[w]) {
                y.set(r);
                break;
            }
    }
    return y;
}

BitMatrix matrix_power(const BitMatrix& a, std::size_t k, Product kind) {
    if (!a.square()) throw std::invalid_argument("matrix_power: matrix is not square");
    BitMatrix result = BitMatrix::identity(a.rows());
    BitMatrix base = a;
    while (k > 0) {
        if (k & 1) result = product(result, base, kind);
        k >>= 1;
        if (k > 0) base = product(base, base, kind);
    }
    return result;
}

// ---- elimination ----

std::size_t gf2_rank(const BitMatrix& a) {
    Rows rows = load(a, 0);
    return reduce(rows, a.rows(), a.cols()).size();
}

std::size_t AffineSolutionSet::count() const {
    if (empty()) return 0;
    if (kernel_basis.size() >= std::numeric_limits<std::size_t>::digits) return std::numeric_limits<std::size_t>::max();
    return std::size_t{1} << kernel_basis.size();
}

std::vector<BitVector> AffineSolutionSet::enumerate(std::size_t limit) const {
    if (empty()) return {};
    if (count() > limit) throw std::length_error("solution set too large to enumerate");
    std::vector<BitVector> out;
    out.reserve(count());
    for (std::size_t mask = 0; mask < count(); ++mask) {
        BitVector v = *particular;
        for (std::size_t i = 0; i < kernel_basis.size(); ++i)
            if ((mask >> i) & 1) v ^= kernel_basis[i];
        out.push_back(std::move(v));
    }
    return out;
}

AffineSolutionSet gf2_solve_affine(const BitMatrix& a, const BitVector& y) {
    if (a.rows() != y.size()) throw std::invalid_argument("gf2_solve_affine: dimension mismatch");
    const std::size_t n = a.cols();
    Rows rows = load(a, 1);
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (y.get(r)) rows.set(r, n);
    auto pivots = reduce(rows, a.rows(), n);

    AffineSolutionSet out;
    for (std::size_t r = pivots.size(); r < a.rows(); ++r)
        if (rows.get(r, n)) return out;

    BitVector particular(n);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (rows.get(i, n)) particular.set(pivots[i]);
    out.particular = std::move(particular);

    std::size_t next_pivot = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (next_pivot < pivots.size() && pivots[next_pivot] == f) {
            ++next_pivot;
            continue;
        }
        BitVector v(n);
        v.set(f);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (rows.get(i, f)) v.set(pivots[i]);
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

std::vector<BitVector> gf2_kernel(const BitMatrix& a) {
    return gf2_solve_affine(a, BitVector(a.rows())).kernel_basis;
}

std::optional<BitMatrix> gf2_inverse(const BitMatrix& a) {
    if (!a.square()) throw std::invalid_argument("gf2_inverse: matrix is not square");
    const std::size_t n = a.rows();
    Rows rows = load(a, n);
    for (std::size_t i = 0; i < n; ++i) rows.set(i, n + i);
    if (reduce(rows, n, n).size() != n) return std::nullopt;
    BitMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rows.get(r, n + c)) inv.set(r, c);
    return inv;
}

bool is_permutation(const BitMatrix& a) {
    if (!a.square()) return false;
    std::vector<int> col_count(a.cols(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        int in_row = 0;
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) {
                ++in_row;
                ++col_count[c];
            }
        if (in_row != 1) return false;
    }
    return std::all_of(col_count.begin(), col_count.end(), [](int k) { return k == 1; });
}

}  // namespace caenc
