#include "rnms/alphabet.hpp"

#include <algorithm>

#include "rnms/errors.hpp"

namespace rnms {

Word parse_word(std::string_view s) {
  if (!is_word(s)) {
    throw ParameterError("word must contain only the letters 'a' and 'b': \"" + std::string(s) + "\"");
  }
  return Word(s);
}

Word subword(const Word& w, std::size_t i, std::size_t j) {
  if (i > j || j >= w.size()) {
    throw ParameterError("subword range [" + std::to_string(i) + "," + std::to_string(j) +
                         "] outside word of length " + std::to_string(w.size()));
  }
  return w.substr(i, j - i + 1);
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

LetterCounts abelianization(std::string_view w) noexcept {
  LetterCounts n;
  n.a = static_cast<std::size_t>(std::count(w.begin(), w.end(), 'a'));
  n.b = w.size() - n.a;
  return n;
}

}  // namespace rnms
