#pragma once

#include <stdexcept>
#include <string>

namespace sschemes {

// Error categories; mirrored one-to-one by the C API status codes.
enum class Errc {
    InvalidArgument = 1,
    Parse = 2,
    Validation = 3,
    Io = 4,
    Format = 5,
    Budget = 6,
    Unsupported = 7,
    Internal = 8,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {
    }

    Errc code() const {
        return code_;
    }

  private:
    Errc code_;
};

} // namespace sschemes
