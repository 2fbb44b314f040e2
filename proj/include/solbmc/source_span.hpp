#ifndef SOLBMC_SOURCE_SPAN_HPP
#define SOLBMC_SOURCE_SPAN_HPP

#include <cstdint>
#include <string>

namespace solbmc {

/// Byte range of a construct in the original source, decoded from solc's
/// "offset:length:file" attribute.
struct SourceSpan {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
  std::uint64_t file_index = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

inline std::string to_string(const SourceSpan& span) {
  return std::to_string(span.offset) + ":" + std::to_string(span.length) + ":" +
         std::to_string(span.file_index);
}

}  // namespace solbmc

#endif  // SOLBMC_SOURCE_SPAN_HPP
