#ifndef HARDMONO_ERRORS_HPP
#define HARDMONO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hardmono {

// Shape or structural misuse of the computation graph / network.
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (TSV lines, alignment files, checkpoints).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values encountered during training or inference.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hardmono

#endif
