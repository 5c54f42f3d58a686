#ifndef AGT_WORDS_HPP_
#define AGT_WORDS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agt/machine.hpp"

namespace agt {

  //! A word over Q̃; no reducedness guarantee.
  using GroupWord  = std::vector<SignedState>;
  using ContentSet = std::set<state_t>;
  //! A word over the alphabet A.
  using LetterWord = std::vector<letter_t>;

  //! Parse whitespace-separated tokens `q` or `q^-1` against a list of state
  //! names. A token naming a state exactly is read as that state, so the
  //! states `q^-1` of an inverse machine stay addressable.
  GroupWord parse_word(std::span<std::string const> names,
                       std::string_view             text);
  GroupWord parse_word(Mealy const& m, std::string_view text);

  std::string format_word(std::span<std::string const> names,
                          std::span<SignedState const> w);
  std::string format_word(Mealy const& m, std::span<SignedState const> w);

  LetterWord  parse_letters(Mealy const& m, std::string_view text);
  std::string format_letters(Mealy const& m, std::span<letter_t const> u);

  //! Shortlex comparison with letters ordered as Q before Q⁻¹.
  bool shortlex_less(std::span<SignedState const> u,
                     std::span<SignedState const> v);

  GroupWord  reduce(std::span<SignedState const> w);
  bool       is_reduced(std::span<SignedState const> w);
  GroupWord  mirror(std::span<SignedState const> w);
  GroupWord  invert(std::span<SignedState const> w);
  GroupWord  erase(std::span<SignedState const> w, state_t q);
  bool       is_trivial(std::span<SignedState const> w, state_t sink);
  ContentSet content(std::span<SignedState const> w);
  GroupWord  repeat(std::span<SignedState const> w, std::size_t n);

  //! Shortest z with w = z^k literally; throws invalid_argument on empty w.
  GroupWord primitive_root(std::span<SignedState const> w);

  struct FragileResult {
    //! First letter a with w·a trivial, if any.
    std::optional<letter_t> letter;
    //! Set when w itself is trivial; letter is then absent.
    bool trivial_input = false;
  };

  //! Uses the first identity sink of m. Throws no_sink, not_invertible.
  FragileResult is_fragile(Mealy const& m, GroupWord const& w);

  struct StrongFragility {
    bool strongly_fragile = false;
    //! |content(w)| <= 1, where the definition holds vacuously.
    bool degenerate = false;
  };

  StrongFragility is_strongly_fragile(std::span<SignedState const> w);

  //! Streams the commutator words on generators 0..m-1 in the given order:
  //! [g0^e1, g1^e2] at the core, then [g_j^e, v^f] for j = 2..m-1.
  //! Exponents range over [-bound, bound] without 0 and the exponent
  //! vector (e1, e2, e3, f3, ..., em, fm) advances lexicographically.
  class CommutatorWords {
   public:
    CommutatorWords(std::size_t generators, int bound);

    std::optional<GroupWord> next();

    //! (2 * bound)^(2m - 2)
    std::size_t size() const noexcept;

    static std::size_t length_with_unit_exponents(std::size_t generators);

   private:
    GroupWord build() const;

    std::size_t      _generators;
    int              _bound;
    std::vector<int> _exponents;
    bool             _done = false;
  };

  //! Reduced words over generators 0..m-1 with full content that are strongly
  //! fragile, of the shortest length <= max_len at which any exists.
  struct StronglyFragileSearch {
    std::size_t            shortest = 0;  // 0 when none found
    std::vector<GroupWord> words;         // shortlex order
    std::size_t            examined = 0;
  };

  StronglyFragileSearch shortest_strongly_fragile(std::size_t generators,
                                                  std::size_t max_len);

}  // namespace agt

#endif  // AGT_WORDS_HPP_
