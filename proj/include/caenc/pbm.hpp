#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "caenc/errors.hpp"
#include "caenc/maca.hpp"

namespace caenc {

enum class PbmForm { p1, p4 };

// Netpbm bitmap. Pixel value 1 is black. The header lists width (columns)
// before height (rows).
struct PbmImage {
    CAState pixels;

    int rows() const { return pixels.m(); }
    int cols() const { return pixels.n(); }
};

// Accepts P1 and P4. Throws FormatError.
PbmImage pbm_read(std::span<const std::uint8_t> bytes);
PbmImage pbm_read(std::string_view text);

// P1 output puts one row per line with pixels separated by spaces.
std::vector<std::uint8_t> pbm_write(const PbmImage& image, PbmForm form);

}  // namespace caenc
