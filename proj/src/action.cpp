#include "agt/action.hpp"

#include <deque>
#include <unordered_set>

#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "hash.hpp"

namespace agt {

  using code_t = SignedAction::code_t;

  void require_invertible(Mealy const& m) {
    if (auto q = non_bijective_output_row(m)) {
      throw Error(ErrorCode::not_invertible,
                  "machine is not invertible: output row of state '"
                      + m.states()[*q] + "' is not a bijection");
    }
  }

  SignedAction::SignedAction(Mealy const& m)
      : _n(m.num_states()),
        _k(m.num_letters()),
        _invertible(!non_bijective_output_row(m).has_value()) {
    std::size_t const codes = num_codes();
    _next.resize(codes * _k);
    _out.resize(codes * _k);
    _trivial.assign(codes, false);
    for (state_t q = 0; q < _n; ++q) {
      for (letter_t a = 0; a < _k; ++a) {
        _next[q * _k + a] = m.next(q, a);
        _out[q * _k + a]  = m.out(q, a);
        if (_invertible) {
          // q⁻¹ reading λ(q,a) outputs a and moves to δ(q,a)⁻¹.
          letter_t b                      = m.out(q, a);
          _next[(q + _n) * _k + b] = static_cast<code_t>(m.next(q, a) + _n);
          _out[(q + _n) * _k + b]  = a;
        }
      }
      if (is_identity_sink(m, q)) {
        _trivial[q] = true;
        if (_invertible) {
          _trivial[q + _n] = true;
        }
      }
    }
  }

  std::vector<code_t> SignedAction::encode(std::span<SignedState const> w) const {
    std::vector<code_t> codes;
    codes.reserve(w.size());
    for (auto const& s : w) {
      if (s.base >= _n) {
        throw Error(ErrorCode::invalid_argument, "state index out of range");
      }
      if (s.inverse && !_invertible) {
        throw Error(ErrorCode::not_invertible,
                    "inverse letters need an invertible machine");
      }
      codes.push_back(code(s));
    }
    return codes;
  }

  GroupWord SignedAction::decode(std::span<code_t const> w) const {
    GroupWord result;
    result.reserve(w.size());
    for (code_t c : w) {
      result.push_back(decode(c));
    }
    return result;
  }

  letter_t SignedAction::apply(std::span<code_t const> w,
                               letter_t                a,
                               std::vector<code_t>&    section) const {
    section.resize(w.size());
    for (std::size_t i = w.size(); i-- > 0;) {
      section[i] = next(w[i], a);
      a          = out(w[i], a);
    }
    return a;
  }

  void SignedAction::normalize(std::vector<code_t>& w) const {
    std::size_t top = 0;
    for (code_t c : w) {
      if (_trivial[c]) {
        continue;
      }
      if (top > 0 && w[top - 1] == inverse_code(c)) {
        --top;
      } else {
        w[top++] = c;
      }
    }
    w.resize(top);
  }

  ActResult act(Mealy const&                 m,
                std::span<SignedState const> state_word,
                std::span<letter_t const>    input) {
    SignedAction action(m);
    auto         w = action.encode(state_word);
    ActResult    result;
    result.output.reserve(input.size());
    std::vector<code_t> section;
    for (letter_t a : input) {
      if (a >= m.num_letters()) {
        throw Error(ErrorCode::invalid_argument, "letter index out of range");
      }
      result.output.push_back(action.apply(w, a, section));
      w.swap(section);
    }
    result.section = action.decode(w);
    return result;
  }

  namespace {
    using Word     = std::vector<code_t>;
    using WordSet  = std::unordered_set<Word, detail::VectorHash>;

    bool closure_is_identity(SignedAction const& action, Word start) {
      action.normalize(start);
      if (start.empty()) {
        return true;
      }
      WordSet          seen{start};
      std::deque<Word> queue{start};
      Word             section;
      std::vector<Word> sections(action.num_letters());
      while (!queue.empty()) {
        Word s = std::move(queue.front());
        queue.pop_front();
        for (letter_t a = 0; a < action.num_letters(); ++a) {
          if (action.apply(s, a, sections[a]) != a) {
            return false;
          }
        }
        for (letter_t a = 0; a < action.num_letters(); ++a) {
          action.normalize(sections[a]);
          if (!sections[a].empty() && seen.insert(sections[a]).second) {
            queue.push_back(sections[a]);
          }
        }
      }
      return true;
    }
  }  // namespace

  bool is_identity(Mealy const& m, std::span<SignedState const> w) {
    require_invertible(m);
    SignedAction action(m);
    return closure_is_identity(action, action.encode(w));
  }

  bool same_action(Mealy const&                 m,
                   std::span<SignedState const> u,
                   std::span<SignedState const> v) {
    SignedAction action(m);
    Word         s = action.encode(u), t = action.encode(v);
    action.normalize(s);
    action.normalize(t);
    using Pair = std::vector<code_t>;  // s, separator, t
    code_t const sep  = static_cast<code_t>(action.num_codes());
    auto         join = [&](Word const& x, Word const& y) {
      Pair p = x;
      p.push_back(sep);
      p.insert(p.end(), y.begin(), y.end());
      return p;
    };
    std::unordered_set<Pair, detail::VectorHash> seen{join(s, t)};
    std::deque<std::pair<Word, Word>>            queue{{s, t}};
    Word                                         ss, ts;
    while (!queue.empty()) {
      auto [x, y] = std::move(queue.front());
      queue.pop_front();
      if (x == y) {
        continue;
      }
      for (letter_t a = 0; a < action.num_letters(); ++a) {
        if (action.apply(x, a, ss) != action.apply(y, a, ts)) {
          return false;
        }
        action.normalize(ss);
        action.normalize(ts);
        if (seen.insert(join(ss, ts)).second) {
          queue.emplace_back(ss, ts);
        }
      }
    }
    return true;
  }

  std::optional<std::size_t> order_of(Mealy const&                 m,
                                      std::span<SignedState const> w,
                                      std::size_t                  bound) {
    require_invertible(m);
    SignedAction action(m);
    auto         codes = action.encode(w);
    Word         current;
    for (std::size_t n = 1; n <= bound; ++n) {
      current.insert(current.end(), codes.begin(), codes.end());
      if (closure_is_identity(action, current)) {
        return n;
      }
    }
    return std::nullopt;
  }

  std::optional<LetterWord> g_regular(Mealy const&                 m,
                                      std::span<SignedState const> w,
                                      std::size_t prefix_bound) {
    if (classify(m).sink_states.empty()) {
      throw Error(ErrorCode::no_sink, "machine has no identity sink");
    }
    require_invertible(m);
    SignedAction action(m);
    auto all_sink = [&](Word const& s) {
      for (code_t c : s) {
        if (!action.trivial(c)) {
          return false;
        }
      }
      return true;
    };
    struct Node {
      Word        section;
      std::size_t parent;
      letter_t    letter;
      std::size_t depth;
    };
    std::vector<Node> nodes{{action.encode(w), 0, 0, 0}};
    WordSet           seen{nodes[0].section};
    auto witness = [&](std::size_t i) {
      LetterWord u;
      for (; i != 0; i = nodes[i].parent) {
        u.push_back(nodes[i].letter);
      }
      return LetterWord(u.rbegin(), u.rend());
    };
    Word section;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (all_sink(nodes[i].section)) {
        return witness(i);
      }
      if (nodes[i].depth == prefix_bound) {
        continue;
      }
      for (letter_t a = 0; a < m.num_letters(); ++a) {
        Word current = nodes[i].section;
        action.apply(current, a, section);
        if (seen.insert(section).second) {
          nodes.push_back({section, i, a, nodes[i].depth + 1});
        }
      }
    }
    return std::nullopt;
  }

}  // namespace agt
