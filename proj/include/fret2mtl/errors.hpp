#ifndef FRET2MTL_ERRORS_HPP
#define FRET2MTL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fret2mtl {

/// Malformed textual input.  `position()` is a 0-based offset into the
/// parsed text (a character column, or a line index for line-based files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fret2mtl

#endif  // FRET2MTL_ERRORS_HPP
