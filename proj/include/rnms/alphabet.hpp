#ifndef RNMS_ALPHABET_HPP
#define RNMS_ALPHABET_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

namespace rnms {

enum class Letter : char { a = 'a', b = 'b' };

/// Finite word over {a, b}, stored as its ASCII serialization.
using Word = std::string;

constexpr char to_char(Letter x) noexcept { return static_cast<char>(x); }

inline bool is_word(std::string_view s) noexcept {
  for (char c : s) {
    if (c != 'a' && c != 'b') return false;
  }
  return true;
}

/// Throws ParameterError if `s` contains anything other than 'a' and 'b'.
Word parse_word(std::string_view s);

/// w_{[i,j]}: letters i..j inclusive, so the result has length j - i + 1.
Word subword(const Word& w, std::size_t i, std::size_t j);

Word reversed(const Word& w);

struct LetterCounts {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const LetterCounts&, const LetterCounts&) = default;
};

LetterCounts abelianization(std::string_view w) noexcept;

}  // namespace rnms

#endif  // RNMS_ALPHABET_HPP
