#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hurwitz {

// Error thrown by the text-format parsers (partitions, cycle notation,
// triplets).  `position()` is the byte offset into the parsed string at
// which the problem was detected.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace hurwitz
