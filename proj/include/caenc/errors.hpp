#pragma once

#include <stdexcept>

namespace caenc {

// Malformed external data: containers, key files, images.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace caenc
