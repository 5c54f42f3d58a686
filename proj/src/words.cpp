#include "agt/words.hpp"

#include <algorithm>

#include "agt/action.hpp"
#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "text.hpp"

namespace agt {

  namespace {
    constexpr std::string_view inverse_suffix = "^-1";

    std::optional<state_t> find(std::span<std::string const> names,
                                std::string_view             name) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        return std::nullopt;
      }
      return static_cast<state_t>(it - names.begin());
    }
  }  // namespace

  GroupWord parse_word(std::span<std::string const> names,
                       std::string_view             text) {
    GroupWord w;
    for (auto const& tok : detail::tokens(text)) {
      if (auto q = find(names, tok)) {
        w.push_back({*q, false});
        continue;
      }
      if (tok.size() > inverse_suffix.size() && tok.ends_with(inverse_suffix)) {
        auto stem = std::string_view(tok).substr(
            0, tok.size() - inverse_suffix.size());
        if (auto q = find(names, stem)) {
          w.push_back({*q, true});
          continue;
        }
      }
      throw Error(ErrorCode::unknown_identifier,
                  "unknown state '" + tok + "' in word");
    }
    return w;
  }

  GroupWord parse_word(Mealy const& m, std::string_view text) {
    return parse_word(m.states(), text);
  }

  std::string format_word(std::span<std::string const> names,
                          std::span<SignedState const> w) {
    std::string out;
    for (auto const& s : w) {
      if (!out.empty()) {
        out += ' ';
      }
      out += names[s.base];
      if (s.inverse) {
        out += inverse_suffix;
      }
    }
    return out;
  }

  std::string format_word(Mealy const& m, std::span<SignedState const> w) {
    return format_word(m.states(), w);
  }

  LetterWord parse_letters(Mealy const& m, std::string_view text) {
    LetterWord u;
    for (auto const& tok : detail::tokens(text)) {
      u.push_back(m.letter_index(tok));
    }
    return u;
  }

  std::string format_letters(Mealy const& m, std::span<letter_t const> u) {
    std::string out;
    for (letter_t a : u) {
      if (!out.empty()) {
        out += ' ';
      }
      out += m.alphabet()[a];
    }
    return out;
  }

  bool shortlex_less(std::span<SignedState const> u,
                     std::span<SignedState const> v) {
    if (u.size() != v.size()) {
      return u.size() < v.size();
    }
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  }

  GroupWord reduce(std::span<SignedState const> w) {
    GroupWord stack;
    stack.reserve(w.size());
    for (auto const& s : w) {
      if (!stack.empty() && stack.back() == s.inverted()) {
        stack.pop_back();
      } else {
        stack.push_back(s);
      }
    }
    return stack;
  }

  bool is_reduced(std::span<SignedState const> w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == w[i - 1].inverted()) {
        return false;
      }
    }
    return true;
  }

  GroupWord mirror(std::span<SignedState const> w) {
    return GroupWord(w.rbegin(), w.rend());
  }

  GroupWord invert(std::span<SignedState const> w) {
    GroupWord result;
    result.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      result.push_back(it->inverted());
    }
    return result;
  }

  GroupWord erase(std::span<SignedState const> w, state_t q) {
    GroupWord result;
    for (auto const& s : w) {
      if (s.base != q) {
        result.push_back(s);
      }
    }
    return result;
  }

  bool is_trivial(std::span<SignedState const> w, state_t sink) {
    return reduce(erase(w, sink)).empty();
  }

  ContentSet content(std::span<SignedState const> w) {
    ContentSet c;
    for (auto const& s : w) {
      c.insert(s.base);
    }
    return c;
  }

  GroupWord repeat(std::span<SignedState const> w, std::size_t n) {
    GroupWord result;
    result.reserve(w.size() * n);
    for (std::size_t i = 0; i < n; ++i) {
      result.insert(result.end(), w.begin(), w.end());
    }
    return result;
  }

  GroupWord primitive_root(std::span<SignedState const> w) {
    if (w.empty()) {
      throw Error(ErrorCode::invalid_argument,
                  "the empty word has no primitive root");
    }
    std::size_t const n = w.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = p; i < n && periodic; ++i) {
        periodic = w[i] == w[i - p];
      }
      if (periodic) {
        return GroupWord(w.begin(), w.begin() + p);
      }
    }
    return GroupWord(w.begin(), w.end());
  }

  FragileResult is_fragile(Mealy const& m, GroupWord const& w) {
    auto flags = classify(m);
    if (flags.sink_states.empty()) {
      throw Error(ErrorCode::no_sink, "machine has no identity sink");
    }
    require_invertible(m);
    state_t const sink = flags.sink_states.front();
    if (is_trivial(w, sink)) {
      return {std::nullopt, true};
    }
    SignedAction        action(m);
    auto                codes = action.encode(w);
    std::vector<SignedAction::code_t> section;
    for (letter_t a = 0; a < m.num_letters(); ++a) {
      action.apply(codes, a, section);
      if (is_trivial(action.decode(section), sink)) {
        return {a, false};
      }
    }
    return {std::nullopt, false};
  }

  StrongFragility is_strongly_fragile(std::span<SignedState const> w) {
    auto            c = content(w);
    StrongFragility result;
    result.degenerate       = c.size() <= 1;
    result.strongly_fragile = true;
    // Erase-and-reduce with one stack per generator, no allocation per letter.
    GroupWord stack;
    stack.reserve(w.size());
    for (state_t q : c) {
      stack.clear();
      for (auto const& s : w) {
        if (s.base == q) {
          continue;
        }
        if (!stack.empty() && stack.back() == s.inverted()) {
          stack.pop_back();
        } else {
          stack.push_back(s);
        }
      }
      if (!stack.empty()) {
        result.strongly_fragile = false;
        break;
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Commutator words
  ////////////////////////////////////////////////////////////////////////

  CommutatorWords::CommutatorWords(std::size_t generators, int bound)
      : _generators(generators), _bound(bound) {
    if (generators < 2) {
      throw Error(ErrorCode::invalid_argument,
                  "commutator words need at least 2 generators");
    }
    if (bound < 1) {
      throw Error(ErrorCode::invalid_argument,
                  "exponent bound must be positive");
    }
    _exponents.assign(2 * generators - 2, -bound);
  }

  std::size_t CommutatorWords::size() const noexcept {
    std::size_t total = 1;
    for (std::size_t i = 0; i < _exponents.size(); ++i) {
      total *= static_cast<std::size_t>(2 * _bound);
    }
    return total;
  }

  std::size_t CommutatorWords::length_with_unit_exponents(std::size_t m) {
    return 3 * (std::size_t(1) << (m - 1)) - 2;
  }

  GroupWord CommutatorWords::build() const {
    auto letter_power = [](state_t q, int e) {
      return GroupWord(static_cast<std::size_t>(std::abs(e)),
                       SignedState{q, e < 0});
    };
    auto word_power = [](GroupWord const& v, int e) {
      return repeat(e < 0 ? invert(v) : v, static_cast<std::size_t>(std::abs(e)));
    };
    auto commutator = [](GroupWord const& x, GroupWord const& y) {
      GroupWord w = x;
      w.insert(w.end(), y.begin(), y.end());
      auto xi = invert(x), yi = invert(y);
      w.insert(w.end(), xi.begin(), xi.end());
      w.insert(w.end(), yi.begin(), yi.end());
      return w;
    };
    GroupWord v = commutator(letter_power(0, _exponents[0]),
                             letter_power(1, _exponents[1]));
    for (std::size_t j = 2; j < _generators; ++j) {
      int e = _exponents[2 * j - 2], f = _exponents[2 * j - 1];
      v     = commutator(letter_power(static_cast<state_t>(j), e),
                     word_power(v, f));
    }
    return v;
  }

  std::optional<GroupWord> CommutatorWords::next() {
    if (_done) {
      return std::nullopt;
    }
    GroupWord w = build();
    // Advance the odometer over [-bound, -1] ∪ [1, bound], last entry fastest.
    std::size_t i = _exponents.size();
    while (i > 0) {
      --i;
      int& e = _exponents[i];
      if (e == _bound) {
        e = -_bound;
        continue;
      }
      e = (e == -1) ? 1 : e + 1;
      return w;
    }
    _done = true;
    return w;
  }

  StronglyFragileSearch shortest_strongly_fragile(std::size_t generators,
                                                  std::size_t max_len) {
    StronglyFragileSearch result;
    if (generators == 0) {
      throw Error(ErrorCode::invalid_argument, "need at least one generator");
    }
    std::size_t const alphabet = 2 * generators;
    auto              letter   = [&](std::size_t c) {
      return SignedState{static_cast<state_t>(c % generators), c >= generators};
    };
    for (std::size_t len = 1; len <= max_len; ++len) {
      // Odometer over reduced words of this length in shortlex order.
      std::vector<std::size_t> digits(len, 0);
      GroupWord                w(len);
      auto fix_from = [&](std::size_t start) {
        // Make positions start.. the least reduced completion.
        for (std::size_t j = start; j < len; ++j) {
          digits[j] = 0;
          while (j > 0 && letter(digits[j]) == w[j - 1].inverted()) {
            ++digits[j];
          }
          w[j] = letter(digits[j]);
        }
      };
      fix_from(0);
      while (true) {
        ++result.examined;
        if (content(w).size() == generators
            && is_strongly_fragile(w).strongly_fragile) {
          result.words.push_back(w);
        }
        // Increment.
        std::size_t i = len;
        bool        advanced = false;
        while (i > 0) {
          --i;
          std::size_t d = digits[i] + 1;
          while (d < alphabet && i > 0 && letter(d) == w[i - 1].inverted()) {
            ++d;
          }
          if (d < alphabet) {
            digits[i] = d;
            w[i]      = letter(d);
            fix_from(i + 1);
            advanced = true;
            break;
          }
        }
        if (!advanced) {
          break;
        }
      }
      if (!result.words.empty()) {
        result.shortest = len;
        break;
      }
    }
    return result;
  }

}  // namespace agt
