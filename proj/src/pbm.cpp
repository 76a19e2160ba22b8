#include "caenc/pbm.hpp"

#include <cctype>
#include <string>

namespace caenc {

namespace {

constexpr int kMaxSide = 65535;

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool at_end() const { return pos_ >= bytes_.size(); }
    std::size_t pos() const { return pos_; }
    std::uint8_t peek() const { return bytes_[pos_]; }
    std::uint8_t next() { return bytes_[pos_++]; }

    void skip_space_and_comments() {
        while (!at_end()) {
            if (peek() == '#') {
                while (!at_end() && peek() != '\n') ++pos_;
            } else if (std::isspace(peek())) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    int read_dimension(const char* what) {
        skip_space_and_comments();
        if (at_end() || !std::isdigit(peek())) throw FormatError(std::string("PBM: missing ") + what);
        long v = 0;
        while (!at_end() && std::isdigit(peek())) {
            v = v * 10 + (next() - '0');
            if (v > kMaxSide) throw FormatError(std::string("PBM: ") + what + " too large");
        }
        if (v == 0) throw FormatError(std::string("PBM: ") + what + " must be positive");
        return static_cast<int>(v);
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

PbmImage pbm_read(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw FormatError("PBM: missing magic number");
    if (bytes[1] != '1' && bytes[1] != '4')
        throw FormatError(std::string("unsupported format P") + static_cast<char>(bytes[1]));
    const bool ascii = bytes[1] == '1';

    Reader in(bytes.subspan(2));
    const int width = in.read_dimension("width");
    const int height = in.read_dimension("height");
    PbmImage img{CAState(height, width)};

    if (ascii) {
        for (int i = 0; i < height; ++i)
            for (int j = 0; j < width; ++j) {
                in.skip_space_and_comments();
                if (in.at_end()) throw FormatError("PBM: truncated pixel data");
                std::uint8_t ch = in.next();
                if (ch == '1')
                    img.pixels.set(i, j);
                else if (ch != '0')
                    throw FormatError("PBM: pixel must be 0 or 1");
            }
        return img;
    }

    if (in.at_end() || !std::isspace(in.peek())) throw FormatError("PBM: missing whitespace before raster");
    in.next();
    const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
    const std::size_t start = 2 + in.pos();
    if (bytes.size() < start + row_bytes * height) throw FormatError("PBM: truncated pixel data");
    for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j)
            if (bytes[start + i * row_bytes + j / 8] & (0x80u >> (j % 8))) img.pixels.set(i, j);
    return img;
}

PbmImage pbm_read(std::string_view text) {
    return pbm_read(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::uint8_t> pbm_write(const PbmImage& image, PbmForm form) {
    const int rows = image.rows(), cols = image.cols();
    std::string header = std::string(form == PbmForm::p1 ? "P1" : "P4") + "\n" + std::to_string(cols) + " " +
                         std::to_string(rows) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    if (form == PbmForm::p1) {
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                if (j) out.push_back(' ');
                out.push_back(image.pixels.get(i, j) ? '1' : '0');
            }
            out.push_back('\n');
        }
        return out;
    }
    const std::size_t row_bytes = (static_cast<std::size_t>(cols) + 7) / 8;
    for (int i = 0; i < rows; ++i) {
        std::vector<std::uint8_t> row(row_bytes, 0);
        for (int j = 0; j < cols; ++j)
            if (image.pixels.get(i, j)) row[j / 8] |= static_cast<std::uint8_t>(0x80u >> (j % 8));
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

}  // namespace caenc
