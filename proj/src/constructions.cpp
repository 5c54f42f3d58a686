#include "agt/constructions.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "agt/algebra.hpp"
#include "agt/error.hpp"
#include "text.hpp"

namespace agt {

  namespace {
    constexpr std::size_t exhaustive_limit = 64;
    constexpr std::size_t sampled_triples  = 100000;
  }  // namespace

  FiniteGroupTable::FiniteGroupTable(std::vector<std::string> elements,
                                     std::vector<std::size_t> table)
      : _elements(std::move(elements)), _mul(std::move(table)) {
    std::size_t const n = _elements.size();
    if (n == 0) {
      throw Error(ErrorCode::invalid_argument, "a group needs an element");
    }
    std::unordered_set<std::string> seen;
    for (auto const& x : _elements) {
      if (!is_identifier(x) || !seen.insert(x).second) {
        throw Error(ErrorCode::invalid_argument,
                    "invalid or repeated element name '" + x + "'");
      }
    }
    if (_mul.size() != n * n) {
      throw Error(ErrorCode::invalid_argument,
                  "multiplication table must have |G|^2 entries");
    }
    for (auto x : _mul) {
      if (x >= n) {
        throw Error(ErrorCode::invalid_argument, "table entry out of range");
      }
    }
    auto const& name = _elements;
    for (std::size_t i = 0; i < n; ++i) {
      if (mul(0, i) != i || mul(i, 0) != i) {
        throw Error(ErrorCode::no_identity,
                    "first element " + name[0]
                        + " is not a two-sided identity: fails at " + name[i]);
      }
    }
    _inv.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (mul(i, j) == 0 && mul(j, i) == 0) {
          _inv[i] = j;
          break;
        }
      }
      if (_inv[i] == n) {
        throw Error(ErrorCode::no_inverse,
                    "element " + name[i] + " has no two-sided inverse");
      }
    }
    auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
        throw Error(ErrorCode::not_associative,
                    "(" + name[a] + name[b] + ")" + name[c] + " != " + name[a]
                        + "(" + name[b] + name[c] + ")");
      }
    };
    if (n <= exhaustive_limit) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            check(a, b, c);
          }
        }
      }
    } else {
      _sampled = true;
      std::mt19937_64                            rng(n);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t t = 0; t < sampled_triples; ++t) {
        check(pick(rng), pick(rng), pick(rng));
      }
    }
  }

  FiniteGroupTable zn_group(std::size_t n) {
    if (n == 0) {
      throw Error(ErrorCode::invalid_argument, "Z_n needs n >= 1");
    }
    std::vector<std::string> names;
    std::vector<std::size_t> mul(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::to_string(i));
      for (std::size_t j = 0; j < n; ++j) {
        mul[i * n + j] = (i + j) % n;
      }
    }
    return FiniteGroupTable(std::move(names), std::move(mul));
  }

  FiniteGroupTable group_from_table(std::string_view text) {
    auto lines = detail::logical_lines(text);
    if (lines.empty() || lines[0].tokens.size() != 2
        || lines[0].tokens[0] != "group" || lines[0].tokens[1] != "v1") {
      throw ParseError(lines.empty() ? 1 : lines[0].number,
                       "expected 'group v1'");
    }
    if (lines.size() < 2 || lines[1].tokens[0] != "elements:") {
      throw ParseError(lines.size() < 2 ? lines[0].number + 1 : lines[1].number,
                       "expected 'elements:'");
    }
    std::vector<std::string> elements(lines[1].tokens.begin() + 1,
                                      lines[1].tokens.end());
    std::size_t const n = elements.size();
    if (n == 0) {
      throw ParseError(lines[1].number, "empty element list");
    }
    if (lines.size() != n + 2) {
      throw ParseError(lines.back().number,
                       "expected " + std::to_string(n) + " table rows");
    }
    std::vector<std::size_t> mul;
    for (std::size_t i = 0; i < n; ++i) {
      auto const& row = lines[i + 2];
      if (row.tokens.size() != n) {
        throw ParseError(row.number,
                         "row needs " + std::to_string(n) + " entries");
      }
      for (auto const& tok : row.tokens) {
        auto it = std::find(elements.begin(), elements.end(), tok);
        if (it == elements.end()) {
          throw Error(ErrorCode::unknown_identifier,
                      "line " + std::to_string(row.number)
                          + ": unknown element '" + tok + "'");
        }
        mul.push_back(static_cast<std::size_t>(it - elements.begin()));
      }
    }
    return FiniteGroupTable(std::move(elements), std::move(mul));
  }

  std::string serialize(FiniteGroupTable const& g) {
    std::string out = "group v1\nelements:";
    for (auto const& x : g.elements()) {
      out += " " + x;
    }
    out += '\n';
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        out += (j == 0 ? "" : " ") + g.elements()[g.mul(i, j)];
      }
      out += '\n';
    }
    return out;
  }

  Mealy sink_machine(std::vector<std::string> const& alphabet) {
    if (alphabet.empty()) {
      throw Error(ErrorCode::invalid_argument,
                  "the sink machine needs a nonempty alphabet");
    }
    return Mealy::build({"e"}, alphabet, [](state_t, letter_t a) {
      return std::pair(state_t(0), a);
    });
  }

  namespace {
    std::string sink_name(Mealy const& m) {
      std::unordered_set<std::string> taken(m.states().begin(),
                                            m.states().end());
      if (!taken.contains("e")) {
        return "e";
      }
      for (std::size_t i = 0;; ++i) {
        std::string name = "e_" + std::to_string(i);
        if (!taken.contains(name)) {
          return name;
        }
      }
    }
  }  // namespace

  Mealy add_sink(Mealy const& m) {
    auto name = sink_name(m);
    auto sink = Mealy::build({name}, m.alphabet(), [](state_t, letter_t a) {
      return std::pair(state_t(0), a);
    });
    return disjoint_union(m, sink);
  }

  namespace {
    Mealy s_q_dual_over(std::vector<std::string> const& q,
                        std::vector<std::string> const& letters,
                        std::string const&              sink) {
      // letters lists the alphabet; the sink letter must be among them.
      letter_t e = static_cast<letter_t>(
          std::find(letters.begin(), letters.end(), sink) - letters.begin());
      return Mealy::build(q, letters, [&](state_t s, letter_t x) {
        return std::pair(s, letters[x] == q[s] ? e : x);
      });
    }
  }  // namespace

  Mealy s_q_dual(std::vector<std::string> const& q) {
    if (q.empty()) {
      throw Error(ErrorCode::invalid_argument, "S_Q needs a nonempty Q");
    }
    if (std::find(q.begin(), q.end(), "e") != q.end()) {
      throw Error(ErrorCode::invalid_argument,
                  "S_Q reserves the name e for the sink");
    }
    auto letters = q;
    letters.emplace_back("e");
    return s_q_dual_over(q, letters, "e");
  }

  Mealy s_q(std::vector<std::string> const& q) {
    return dual(s_q_dual(q));
  }

  Mealy dual_embed_sum(Mealy const& b, std::vector<std::string> const& h) {
    if (auto q = non_bijective_output_row(b)) {
      throw Error(ErrorCode::not_invertible,
                  "machine is not invertible: output row of state '"
                      + b.states()[*q] + "' is not a bijection");
    }
    if (h.empty()) {
      throw Error(ErrorCode::invalid_argument, "H must be nonempty");
    }
    std::unordered_set<std::string> seen;
    for (auto const& x : h) {
      if (!b.find_state(x)) {
        throw Error(ErrorCode::invalid_argument,
                    "H contains '" + x + "', which is not a state");
      }
      if (!seen.insert(x).second) {
        throw Error(ErrorCode::invalid_argument, "H repeats '" + x + "'");
      }
    }
    Mealy be      = add_sink(b);
    auto  letters = be.states();  // b's states then the sink
    Mealy dsh     = s_q_dual_over(h, letters, letters.back());
    return dual(disjoint_union(dual(be), dsh));
  }

  namespace {
    Mealy cayley(FiniteGroupTable const& g,
                 std::string const&      prefix,
                 bool                    bi) {
      std::vector<std::string> states;
      for (auto const& x : g.elements()) {
        states.push_back(prefix + x);
      }
      return Mealy::build(states, g.elements(), [&](state_t s, letter_t x) {
        if (bi && s == 0) {
          return std::pair(static_cast<state_t>(x), letter_t(0));
        }
        if (s == g.inv(x)) {
          return std::pair(state_t(0), letter_t(0));
        }
        return std::pair(static_cast<state_t>(g.mul(s, x)), x);
      });
    }
  }  // namespace

  Mealy cayley_machine(FiniteGroupTable const& g,
                       std::string const&      state_prefix) {
    return cayley(g, state_prefix, false);
  }

  Mealy bi_cayley_machine(FiniteGroupTable const& g,
                          std::string const&      state_prefix) {
    return cayley(g, state_prefix, true);
  }

  PartialSums partial_sums(std::span<std::pair<std::size_t, bool> const> u,
                           std::size_t                                   n) {
    if (n == 0) {
      throw Error(ErrorCode::invalid_argument, "modulus must be positive");
    }
    PartialSums result;
    std::size_t sum = 0;
    for (auto [v, inverse] : u) {
      if (v >= n) {
        throw Error(ErrorCode::invalid_argument,
                    "residue " + std::to_string(v) + " out of range mod "
                        + std::to_string(n));
      }
      sum = (sum + (inverse ? n - v : v)) % n;
      result.phi.push_back(sum);
      result.sums.insert(sum);
    }
    result.final_zero = !u.empty() && sum == 0;
    return result;
  }

}  // namespace agt
