#ifndef AGT_SRC_ENUMERATE_HPP_
#define AGT_SRC_ENUMERATE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace agt::detail {

  // Calls f(word) for every word of length `len` over `letters` (taken in the
  // given order) with first letter `letters[first]` whose adjacent letters
  // are never mutually inverse, in lexicographic order. `inverse(c)` returns
  // the inverse code of c. f returns false to stop early; the function then
  // returns false too.
  template <typename Inverse, typename Func>
  bool for_each_reduced_word(std::vector<std::uint32_t> const& letters,
                             Inverse&&                         inverse,
                             std::size_t                       len,
                             std::size_t                       first,
                             Func&&                            f) {
    if (len == 0) {
      std::vector<std::uint32_t> empty;
      return f(empty);
    }
    std::vector<std::uint32_t> word(len);
    std::vector<std::size_t>   digit(len, 0);
    word[0] = letters[first];
    std::size_t i = 1;
    digit[0]      = first;
    if (len == 1) {
      return f(word);
    }
    digit[1] = 0;
    while (true) {
      // Try to place digit[i] at position i.
      if (digit[i] == letters.size()) {
        if (i == 1) {
          return true;
        }
        --i;
        ++digit[i];
        continue;
      }
      std::uint32_t c = letters[digit[i]];
      if (c == inverse(word[i - 1])) {
        ++digit[i];
        continue;
      }
      word[i] = c;
      if (i + 1 == len) {
        if (!f(word)) {
          return false;
        }
        ++digit[i];
      } else {
        ++i;
        digit[i] = 0;
      }
    }
  }

}  // namespace agt::detail

#endif  // AGT_SRC_ENUMERATE_HPP_
