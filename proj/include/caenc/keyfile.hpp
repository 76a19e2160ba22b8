#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "caenc/codec.hpp"

namespace caenc {

struct ParsedKey {
    Key key;
    MacaProfile profile;
    std::vector<std::string> warnings;
};

// Plain-text key, one field per line:
//   version 1
//   block <m> <n>
//   boundary null|periodic
//   rule <0..511>
//   enc <a> <b>
// Each field must appear exactly once; blank lines are ignored. Malformed or
// out-of-range fields throw FormatError. A rule that is not a usable MACA at
// the block size throws InvalidKey naming nearby rules that are.
ParsedKey key_parse(std::string_view text);

std::string key_write(const Key& key);

}  // namespace caenc
