#include "agt/machine.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "agt/error.hpp"
#include "text.hpp"

namespace agt {

  namespace {
    bool is_word_char(char c) noexcept {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')
             || (c >= '0' && c <= '9') || c == '_';
    }

    void check_names(std::vector<std::string> const& names, char const* what) {
      if (names.empty()) {
        throw Error(ErrorCode::invalid_argument,
                    std::string("a machine needs at least one ") + what);
      }
      std::unordered_set<std::string_view> seen;
      for (auto const& name : names) {
        if (!is_label(name)) {
          throw Error(ErrorCode::invalid_argument,
                      std::string("invalid ") + what + " identifier '" + name
                          + "'");
        }
        if (!seen.insert(name).second) {
          throw Error(ErrorCode::invalid_argument,
                      std::string("duplicate ") + what + " identifier '" + name
                          + "'");
        }
      }
    }

    template <typename T>
    std::optional<T> find_name(std::vector<std::string> const& names,
                               std::string_view                name) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        return std::nullopt;
      }
      return static_cast<T>(it - names.begin());
    }
  }  // namespace

  bool is_identifier(std::string_view s) noexcept {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_word_char);
  }

  bool is_label(std::string_view s) noexcept {
    if (s.empty() || s == "->") {
      return false;
    }
    return std::all_of(s.begin(), s.end(), [](char c) {
      return is_word_char(c) || c == '(' || c == ')' || c == ',' || c == '^'
             || c == '-';
    });
  }

  Mealy::Mealy(std::vector<std::string> states,
               std::vector<std::string> alphabet,
               std::vector<state_t>     transition,
               std::vector<letter_t>    output)
      : _states(std::move(states)),
        _alphabet(std::move(alphabet)),
        _transition(std::move(transition)),
        _output(std::move(output)) {
    check_names(_states, "state");
    check_names(_alphabet, "letter");
    std::size_t const size = _states.size() * _alphabet.size();
    if (_transition.size() != size || _output.size() != size) {
      throw Error(ErrorCode::invalid_argument,
                  "transition tables must have |Q|*|A| entries");
    }
    for (std::size_t i = 0; i < size; ++i) {
      if (_transition[i] >= _states.size() || _output[i] >= _alphabet.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "transition table entry out of range");
      }
    }
  }

  std::optional<state_t> Mealy::find_state(std::string_view name) const {
    return find_name<state_t>(_states, name);
  }

  std::optional<letter_t> Mealy::find_letter(std::string_view name) const {
    return find_name<letter_t>(_alphabet, name);
  }

  state_t Mealy::state_index(std::string_view name) const {
    if (auto q = find_state(name)) {
      return *q;
    }
    throw Error(ErrorCode::unknown_identifier,
                "unknown state '" + std::string(name) + "'");
  }

  letter_t Mealy::letter_index(std::string_view name) const {
    if (auto a = find_letter(name)) {
      return *a;
    }
    throw Error(ErrorCode::unknown_identifier,
                "unknown letter '" + std::string(name) + "'");
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  Mealy parse_machine(std::string_view text) {
    auto lines = detail::logical_lines(text);
    auto it    = lines.begin();

    auto expect_header = [&](std::string_view keyword) {
      if (it == lines.end()) {
        throw ParseError(lines.empty() ? 1 : lines.back().number + 1,
                         "missing '" + std::string(keyword) + "' line");
      }
      auto const& line = *it++;
      if (line.tokens.front() != keyword) {
        throw ParseError(line.number,
                         "expected '" + std::string(keyword) + "'");
      }
      return line;
    };

    auto magic = expect_header("mealy");
    if (magic.tokens.size() != 2 || magic.tokens[1] != "v1") {
      throw ParseError(magic.number, "expected 'mealy v1'");
    }

    auto read_ids = [&](std::string_view keyword) {
      auto                     line = expect_header(keyword);
      std::vector<std::string> ids(line.tokens.begin() + 1, line.tokens.end());
      if (ids.empty()) {
        throw ParseError(line.number, "empty identifier list");
      }
      std::unordered_set<std::string> seen;
      for (auto const& id : ids) {
        if (!is_label(id)) {
          throw ParseError(line.number, "invalid identifier '" + id + "'");
        }
        if (!seen.insert(id).second) {
          throw ParseError(line.number, "identifier '" + id + "' repeated");
        }
      }
      return ids;
    };

    auto states   = read_ids("states:");
    auto alphabet = read_ids("alphabet:");

    std::unordered_map<std::string, state_t>  state_of;
    std::unordered_map<std::string, letter_t> letter_of;
    for (std::size_t i = 0; i < states.size(); ++i) {
      state_of.emplace(states[i], static_cast<state_t>(i));
    }
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      letter_of.emplace(alphabet[i], static_cast<letter_t>(i));
    }

    std::size_t const     k = alphabet.size();
    std::vector<state_t>  delta(states.size() * k);
    std::vector<letter_t> lambda(states.size() * k);
    std::vector<bool>     defined(states.size() * k, false);

    for (; it != lines.end(); ++it) {
      auto const& line = *it;
      auto const& tok  = line.tokens;
      if (tok.size() != 5 || tok[2] != "->") {
        throw ParseError(line.number,
                         "expected '<state> <letter> -> <state> <letter>'");
      }
      auto state = [&](std::string const& id) {
        auto f = state_of.find(id);
        if (f == state_of.end()) {
          throw Error(ErrorCode::unknown_identifier,
                      "line " + std::to_string(line.number)
                          + ": unknown state '" + id + "'");
        }
        return f->second;
      };
      auto letter = [&](std::string const& id) {
        auto f = letter_of.find(id);
        if (f == letter_of.end()) {
          throw Error(ErrorCode::unknown_identifier,
                      "line " + std::to_string(line.number)
                          + ": unknown letter '" + id + "'");
        }
        return f->second;
      };
      state_t const  q = state(tok[0]);
      letter_t const a = letter(tok[1]);
      std::size_t const i = q * k + a;
      if (defined[i]) {
        throw Error(ErrorCode::duplicate_transition,
                    "line " + std::to_string(line.number)
                        + ": duplicate transition for (" + tok[0] + ", "
                        + tok[1] + ")");
      }
      defined[i] = true;
      delta[i]   = state(tok[3]);
      lambda[i]  = letter(tok[4]);
    }

    std::string missing;
    for (std::size_t i = 0; i < defined.size(); ++i) {
      if (!defined[i]) {
        missing += (missing.empty() ? "" : ", ");
        missing += "(" + states[i / k] + ", " + alphabet[i % k] + ")";
      }
    }
    if (!missing.empty()) {
      throw Error(ErrorCode::incomplete, "missing transitions: " + missing);
    }
    return Mealy(std::move(states),
                 std::move(alphabet),
                 std::move(delta),
                 std::move(lambda));
  }

  std::string serialize(Mealy const& m) {
    std::string out = "mealy v1\nstates:";
    for (auto const& q : m.states()) {
      out += ' ';
      out += q;
    }
    out += "\nalphabet:";
    for (auto const& a : m.alphabet()) {
      out += ' ';
      out += a;
    }
    out += '\n';
    for (state_t q = 0; q < m.num_states(); ++q) {
      for (letter_t a = 0; a < m.num_letters(); ++a) {
        out += m.states()[q];
        out += ' ';
        out += m.alphabet()[a];
        out += " -> ";
        out += m.states()[m.next(q, a)];
        out += ' ';
        out += m.alphabet()[m.out(q, a)];
        out += '\n';
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  std::optional<state_t> non_bijective_output_row(Mealy const& m) {
    std::vector<bool> hit(m.num_letters());
    for (state_t q = 0; q < m.num_states(); ++q) {
      std::fill(hit.begin(), hit.end(), false);
      for (letter_t a = 0; a < m.num_letters(); ++a) {
        if (hit[m.out(q, a)]) {
          return q;
        }
        hit[m.out(q, a)] = true;
      }
    }
    return std::nullopt;
  }

  std::optional<letter_t> non_bijective_transition_column(Mealy const& m) {
    std::vector<bool> hit(m.num_states());
    for (letter_t a = 0; a < m.num_letters(); ++a) {
      std::fill(hit.begin(), hit.end(), false);
      for (state_t q = 0; q < m.num_states(); ++q) {
        if (hit[m.next(q, a)]) {
          return a;
        }
        hit[m.next(q, a)] = true;
      }
    }
    return std::nullopt;
  }

  bool is_identity_sink(Mealy const& m, state_t e) noexcept {
    for (letter_t a = 0; a < m.num_letters(); ++a) {
      if (m.next(e, a) != e || m.out(e, a) != a) {
        return false;
      }
    }
    return true;
  }

  namespace {
    bool output_reversible(Mealy const& m) {
      std::size_t const n = m.num_states();
      std::vector<int>  out_count(n), in_count(n);
      for (letter_t b = 0; b < m.num_letters(); ++b) {
        std::fill(out_count.begin(), out_count.end(), 0);
        std::fill(in_count.begin(), in_count.end(), 0);
        for (state_t q = 0; q < n; ++q) {
          for (letter_t a = 0; a < m.num_letters(); ++a) {
            if (m.out(q, a) == b) {
              ++out_count[q];
              ++in_count[m.next(q, a)];
            }
          }
        }
        for (state_t q = 0; q < n; ++q) {
          if (out_count[q] != 1 || in_count[q] != 1) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace

  ClassFlags classify(Mealy const& m) {
    ClassFlags flags;
    flags.invertible        = !non_bijective_output_row(m).has_value();
    flags.reversible        = !non_bijective_transition_column(m).has_value();
    flags.output_reversible = output_reversible(m);
    flags.bireversible      = flags.reversible && flags.output_reversible;
    for (state_t q = 0; q < m.num_states(); ++q) {
      if (is_identity_sink(m, q)) {
        flags.sink_states.push_back(q);
      }
    }
    if (!flags.sink_states.empty()) {
      // Reverse reachability from the sinks in the δ-graph.
      std::vector<std::vector<state_t>> preds(m.num_states());
      for (state_t q = 0; q < m.num_states(); ++q) {
        for (letter_t a = 0; a < m.num_letters(); ++a) {
          preds[m.next(q, a)].push_back(q);
        }
      }
      std::vector<bool>   seen(m.num_states(), false);
      std::deque<state_t> queue;
      for (state_t e : flags.sink_states) {
        seen[e] = true;
        queue.push_back(e);
      }
      while (!queue.empty()) {
        state_t p = queue.front();
        queue.pop_front();
        for (state_t q : preds[p]) {
          if (!seen[q]) {
            seen[q] = true;
            queue.push_back(q);
          }
        }
      }
      flags.sink_accessible_from_all
          = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
    return flags;
  }

}  // namespace agt
