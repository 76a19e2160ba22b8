#include "caenc/codec.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "caenc/algebra.hpp"

namespace caenc {

namespace {

std::size_t ceil_sqrt(std::size_t x) {
    std::size_t r = 0;
    while (r * r < x) ++r;
    return r;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) | (std::uint32_t{b[at + 2]} << 8) |
           std::uint32_t{b[at + 3]};
}

int reduce_mod(int v, int mod) { return ((v % mod) + mod) % mod; }

// Member of the attractor's basin with zeros outside the top-left rows x cols
// corner. Solves T^d x = attractor with the overhang cells pinned to zero.
CAState edge_representative(const BitMatrix& collapse, const CAState& attractor, int rows, int cols) {
    const int bm = attractor.m(), bn = attractor.n();
    std::vector<std::size_t> pinned;
    bool clean = true;
    for (int i = 0; i < bm; ++i)
        for (int j = 0; j < bn; ++j)
            if (i >= rows || j >= cols) {
                pinned.push_back(static_cast<std::size_t>(i) * bn + j);
                clean = clean && !attractor.get(i, j);
            }
    if (clean) return attractor;

    const std::size_t cells = attractor.cells();
    BitMatrix a(cells + pinned.size(), cells);
    BitVector rhs(cells + pinned.size());
    for (std::size_t r = 0; r < cells; ++r) {
        for (std::size_t c = 0; c < cells; ++c)
            if (collapse.get(r, c)) a.set(r, c);
        rhs.set(r, attractor.bits().get(r));
    }
    for (std::size_t k = 0; k < pinned.size(); ++k) a.set(cells + k, pinned[k]);
    auto sol = gf2_solve_affine(a, rhs);
    // The zero-padded source block is always a solution.
    if (sol.empty()) throw std::logic_error("no basin member vanishes on the padding");
    return CAState(bm, bn, *sol.particular);
}

}  // namespace

MacaProfile key_profile(const Key& key) {
    if (key.enc_a < 0 || key.enc_b < 0) throw InvalidKey("encryption exponents must be non-negative");
    if (key.block_m < 1 || key.block_n < 1 || key.block_m > 255 || key.block_n > 255)
        throw InvalidKey("block dimensions must lie in 1..255");
    MacaProfile profile;
    try {
        profile = maca_profile(key.maca_rule());
    } catch (const std::out_of_range& e) {
        throw InvalidKey(e.what());
    } catch (const std::length_error& e) {
        throw InvalidKey(e.what());
    }
    if (!profile.is_maca)
        throw InvalidKey("rule " + std::to_string(key.rule) + " is not a MACA on a " + std::to_string(key.block_m) +
                         "x" + std::to_string(key.block_n) + " " + std::string(to_string(key.boundary)) + " block");
    if (profile.attractor_bits == 0)
        throw InvalidKey("degenerate key: rule " + std::to_string(key.rule) +
                         " has a single attractor, so blocks compress to zero bits");
    return profile;
}

Layout plan_layout(int image_m, int image_n, const Key& key) {
    return plan_layout(image_m, image_n, key, key_profile(key));
}

Layout plan_layout(int image_m, int image_n, const Key& key, const MacaProfile& profile) {
    if (image_m < 1 || image_n < 1) throw std::invalid_argument("image dimensions must be positive");
    if (!profile.is_maca || profile.attractor_bits == 0) throw InvalidKey("degenerate key");
    Layout l;
    l.image_m = image_m;
    l.image_n = image_n;
    l.padded_m = (image_m + key.block_m - 1) / key.block_m * key.block_m;
    l.padded_n = (image_n + key.block_n - 1) / key.block_n * key.block_n;
    l.blocks = static_cast<std::size_t>(l.padded_m / key.block_m) * static_cast<std::size_t>(l.padded_n / key.block_n);
    l.bits_per_block = profile.attractor_bits;
    l.pef_len = l.blocks * l.bits_per_block;
    std::size_t p = ceil_sqrt(l.pef_len);
    std::size_t q = (l.pef_len + p - 1) / p;
    if (p > std::numeric_limits<std::uint16_t>::max() || q > std::numeric_limits<std::uint16_t>::max())
        throw std::length_error("PEF matrix too large");
    l.p = static_cast<int>(p);
    l.q = static_cast<int>(q);
    return l;
}

Ratio Ratio::reduced(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("ratio with zero denominator");
    std::uint64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

std::string Ratio::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Ratio compression_ratio(const MacaProfile& profile) {
    if (!profile.is_maca) throw std::invalid_argument("compression ratio needs a MACA profile");
    return Ratio::reduced(profile.attractor_bits, profile.spec.cells());
}

Ratio compression_ratio(const Key& key) { return compression_ratio(key_profile(key)); }

Distortion distortion(const CAState& a, const CAState& b) {
    if (a.m() != b.m() || a.n() != b.n()) throw std::invalid_argument("distortion: dimension mismatch");
    Distortion d;
    d.hamming = (a.bits() ^ b.bits()).popcount();
    d.rate = static_cast<double>(d.hamming) / static_cast<double>(a.cells());
    return d;
}

// ---- container ----

std::vector<std::uint8_t> EncompressedContainer::serialize() const {
    const std::size_t bits = static_cast<std::size_t>(p) * q;
    if (payload.size() != bits) throw std::invalid_argument("payload length does not equal p*q");
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + (bits + 7) / 8);
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(kVersion);
    put_u16(out, image_m);
    put_u16(out, image_n);
    out.push_back(block_m);
    out.push_back(block_n);
    put_u32(out, pef_len);
    put_u16(out, p);
    put_u16(out, q);
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < bits; ++i) {
        if (payload.get(i)) acc |= static_cast<std::uint8_t>(0x80u >> (i % 8));
        if (i % 8 == 7) {
            out.push_back(acc);
            acc = 0;
        }
    }
    if (bits % 8 != 0) out.push_back(acc);
    return out;
}

EncompressedContainer EncompressedContainer::parse(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) throw FormatError("container shorter than its header");
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw FormatError("bad container magic");
    if (bytes[4] != kVersion) throw FormatError("unsupported container version " + std::to_string(bytes[4]));
    EncompressedContainer c;
    c.image_m = get_u16(bytes, 5);
    c.image_n = get_u16(bytes, 7);
    c.block_m = bytes[9];
    c.block_n = bytes[10];
    c.pef_len = get_u32(bytes, 11);
    c.p = get_u16(bytes, 15);
    c.q = get_u16(bytes, 17);
    if (c.image_m == 0 || c.image_n == 0 || c.block_m == 0 || c.block_n == 0)
        throw FormatError("container dimensions must be positive");
    const std::size_t bits = static_cast<std::size_t>(c.p) * c.q;
    if (bits < c.pef_len) throw FormatError("PEF matrix smaller than the PEF stream");
    const std::size_t payload_bytes = (bits + 7) / 8;
    if (bytes.size() != kHeaderSize + payload_bytes)
        throw FormatError("payload is " + std::to_string(bytes.size() - kHeaderSize) + " bytes, header implies " +
                          std::to_string(payload_bytes));
    c.payload = BitVector(bits);
    for (std::size_t i = 0; i < bits; ++i)
        if (bytes[kHeaderSize + i / 8] & (0x80u >> (i % 8))) c.payload.set(i);
    if (bits % 8 != 0) {
        std::uint8_t tail = bytes.back() & static_cast<std::uint8_t>(0xffu >> (bits % 8));
        if (tail != 0) throw FormatError("nonzero padding in the final payload byte");
    }
    return c;
}

// ---- translation ----

BitVector apply_translation(const BitVector& grid, int a, int b, int p, int q) {
    const std::size_t cells = static_cast<std::size_t>(p) * q;
    if (grid.size() != cells) throw std::invalid_argument("grid length does not equal p*q");
    if (cells <= kMaxDimension) return bool_apply(translation_matrix(a, b, p, q), grid);
    BitVector out(cells);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
            if (grid.get(static_cast<std::size_t>((i + a) % p) * q + (j + b) % q))
                out.set(static_cast<std::size_t>(i) * q + j);
    return out;
}

// ---- pipeline ----

Encompressor::Encompressor(Key key)
    : key_(key), profile_(key_profile(key_)), collapse_(collapse_to_depth_one(profile_)) {}

BitVector Encompressor::compress(const CAState& image, const Layout& layout) const {
    if (image.m() != layout.image_m || image.n() != layout.image_n)
        throw std::invalid_argument("image does not match the layout");
    const int bm = key_.block_m, bn = key_.block_n;
    BitVector stream(layout.pef_len);
    std::size_t at = 0;
    for (int bi = 0; bi < layout.padded_m; bi += bm)
        for (int bj = 0; bj < layout.padded_n; bj += bn) {
            CAState block(bm, bn);
            for (int i = 0; i < bm; ++i)
                for (int j = 0; j < bn; ++j) {
                    int r = bi + i, c = bj + j;
                    if (r < image.m() && c < image.n() && image.get(r, c)) block.set(i, j);
                }
            BitVector pef = classify(block, profile_);
            for (std::size_t k = 0; k < pef.size(); ++k) stream.set(at++, pef.get(k));
        }
    return stream;
}

BitVector Encompressor::encrypt(const BitVector& pef_stream, const Layout& layout) const {
    if (pef_stream.size() != layout.pef_len) throw std::invalid_argument("PEF stream length does not match layout");
    BitVector grid(layout.payload_bits());
    for (std::size_t i = 0; i < pef_stream.size(); ++i)
        if (pef_stream.get(i)) grid.set(i);
    return apply_translation(grid, reduce_mod(key_.enc_a, layout.p), reduce_mod(key_.enc_b, layout.q), layout.p,
                             layout.q);
}

BitVector Encompressor::decrypt(const BitVector& payload, const Layout& layout) const {
    if (payload.size() != layout.payload_bits()) throw std::invalid_argument("payload length does not match layout");
    int a = reduce_mod(layout.p - reduce_mod(key_.enc_a, layout.p), layout.p);
    int b = reduce_mod(layout.q - reduce_mod(key_.enc_b, layout.q), layout.q);
    BitVector grid = apply_translation(payload, a, b, layout.p, layout.q);
    BitVector stream(layout.pef_len);
    for (std::size_t i = 0; i < layout.pef_len; ++i)
        if (grid.get(i)) stream.set(i);
    return stream;
}

CAState Encompressor::decompress(const BitVector& pef_stream, const Layout& layout) const {
    if (pef_stream.size() != layout.pef_len) throw std::invalid_argument("PEF stream length does not match layout");
    const int bm = key_.block_m, bn = key_.block_n;
    CAState image(layout.image_m, layout.image_n);
    std::size_t at = 0;
    for (int bi = 0; bi < layout.padded_m; bi += bm)
        for (int bj = 0; bj < layout.padded_n; bj += bn) {
            BitVector pef(layout.bits_per_block);
            for (std::size_t k = 0; k < pef.size(); ++k) pef.set(k, pef_stream.get(at++));
            CAState block = attractor_from_pef(profile_, pef);
            if (bi + bm > image.m() || bj + bn > image.n())
                block = edge_representative(collapse_, block, image.m() - bi, image.n() - bj);
            for (int i = 0; i < bm; ++i)
                for (int j = 0; j < bn; ++j) {
                    int r = bi + i, c = bj + j;
                    if (r < image.m() && c < image.n() && block.get(i, j)) image.set(r, c);
                }
        }
    return image;
}

EncompressedContainer Encompressor::encompress(const CAState& image) const {
    if (image.m() > std::numeric_limits<std::uint16_t>::max() || image.n() > std::numeric_limits<std::uint16_t>::max())
        throw std::length_error("image dimensions exceed the container's 16-bit fields");
    Layout layout = plan(image.m(), image.n());
    if (layout.pef_len > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("PEF stream exceeds the container's 32-bit length field");
    EncompressedContainer c;
    c.image_m = static_cast<std::uint16_t>(image.m());
    c.image_n = static_cast<std::uint16_t>(image.n());
    c.block_m = static_cast<std::uint8_t>(key_.block_m);
    c.block_n = static_cast<std::uint8_t>(key_.block_n);
    c.pef_len = static_cast<std::uint32_t>(layout.pef_len);
    c.p = static_cast<std::uint16_t>(layout.p);
    c.q = static_cast<std::uint16_t>(layout.q);
    c.payload = encrypt(compress(image, layout), layout);
    return c;
}

CAState Encompressor::dencompress(const EncompressedContainer& c) const {
    if (c.block_m != key_.block_m || c.block_n != key_.block_n)
        throw FormatError("container block size " + std::to_string(c.block_m) + "x" + std::to_string(c.block_n) +
                          " does not match the key's " + std::to_string(key_.block_m) + "x" +
                          std::to_string(key_.block_n));
    Layout layout = plan(c.image_m, c.image_n);
    if (c.pef_len != layout.pef_len)
        throw FormatError("container PEF length " + std::to_string(c.pef_len) + " inconsistent with the key (expected " +
                          std::to_string(layout.pef_len) + ")");
    // Any p x q arrangement holding the stream decodes; the header is authoritative.
    if (static_cast<std::size_t>(c.p) * c.q < c.pef_len) throw FormatError("PEF matrix smaller than the PEF stream");
    layout.p = c.p;
    layout.q = c.q;
    if (c.payload.size() != layout.payload_bits()) throw FormatError("payload length does not equal p*q");
    return decompress(decrypt(c.payload, layout), layout);
}

EncompressedContainer encompress(const CAState& image, const Key& key) { return Encompressor(key).encompress(image); }

CAState dencompress(const EncompressedContainer& container, const Key& key) {
    return Encompressor(key).dencompress(container);
}

}  // namespace caenc
