#include "agt/algebra.hpp"

#include <unordered_set>

#include "agt/error.hpp"

namespace agt {

  namespace {
    std::string inverse_name(std::string const& name) {
      return name + "^-1";
    }

    void require_same_alphabet(Mealy const& m1, Mealy const& m2) {
      if (m1.alphabet() != m2.alphabet()) {
        throw Error(ErrorCode::alphabet_mismatch,
                    "machines have different ordered alphabets");
      }
    }

    std::string fresh_name(std::string const&                     base,
                           std::unordered_set<std::string> const& taken) {
      if (!taken.contains(base)) {
        return base;
      }
      for (std::size_t i = 0;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.contains(candidate)) {
          return candidate;
        }
      }
    }
  }  // namespace

  std::vector<std::string> tuple_items(std::string const& label) {
    if (label.size() < 2 || label.front() != '(' || label.back() != ')') {
      return {label};
    }
    std::vector<std::string> items;
    int                      depth = 0;
    std::size_t              start = 1;
    for (std::size_t i = 0; i < label.size(); ++i) {
      char c = label[i];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        --depth;
        if (depth == 0 && i + 1 != label.size()) {
          return {label};  // the outer parentheses do not enclose everything
        }
      } else if (c == ',' && depth == 1) {
        items.push_back(label.substr(start, i - start));
        start = i + 1;
      }
    }
    items.push_back(label.substr(start, label.size() - 1 - start));
    return items;
  }

  Mealy dual(Mealy const& m) {
    return Mealy::build(m.alphabet(), m.states(), [&](state_t a, letter_t p) {
      return std::pair(m.out(p, a), m.next(p, a));
    });
  }

  Mealy inverse(Mealy const& m) {
    if (auto q = non_bijective_output_row(m)) {
      throw Error(ErrorCode::not_invertible,
                  "machine is not invertible: output row of state '"
                      + m.states()[*q] + "' is not a bijection");
    }
    std::size_t const     k = m.num_letters();
    std::vector<letter_t> preimage(m.num_states() * k);
    for (state_t q = 0; q < m.num_states(); ++q) {
      for (letter_t b = 0; b < k; ++b) {
        preimage[q * k + m.out(q, b)] = b;
      }
    }
    std::vector<std::string> names;
    for (auto const& q : m.states()) {
      names.push_back(inverse_name(q));
    }
    return Mealy::build(
        std::move(names), m.alphabet(), [&](state_t q, letter_t a) {
          letter_t b = preimage[q * k + a];
          return std::pair(m.next(q, b), b);
        });
  }

  Mealy enrich(Mealy const& m) {
    if (auto a = non_bijective_transition_column(m)) {
      throw Error(ErrorCode::not_reversible,
                  "machine is not reversible: transition column of letter '"
                      + m.alphabet()[*a] + "' is not a bijection");
    }
    std::size_t const        k = m.num_letters();
    std::vector<std::string> letters = m.alphabet();
    for (auto const& a : m.alphabet()) {
      letters.push_back(inverse_name(a));
    }
    // pred[p * k + a] is the unique q with δ(q, a) = p.
    std::vector<state_t> pred(m.num_states() * k);
    for (state_t q = 0; q < m.num_states(); ++q) {
      for (letter_t a = 0; a < k; ++a) {
        pred[m.next(q, a) * k + a] = q;
      }
    }
    return Mealy::build(
        m.states(), std::move(letters), [&](state_t p, letter_t x) {
          if (x < k) {
            return std::pair(m.next(p, x), m.out(p, x));
          }
          letter_t a = x - static_cast<letter_t>(k);
          state_t  q = pred[p * k + a];
          return std::pair(q, static_cast<letter_t>(m.out(q, a) + k));
        });
  }

  Mealy enriched_dual(Mealy const& m) {
    if (auto q = non_bijective_output_row(m)) {
      throw Error(ErrorCode::not_invertible,
                  "machine is not invertible: output row of state '"
                      + m.states()[*q] + "' is not a bijection");
    }
    Mealy result = enrich(dual(m));
#ifndef NDEBUG
    if (result != dual(disjoint_union(m, inverse(m)))) {
      throw Error(ErrorCode::verification_failed,
                  "enrich(dual(m)) differs from dual(m ⊔ m^-1)");
    }
#endif
    return result;
  }

  Mealy product(Mealy const& m1, Mealy const& m2) {
    require_same_alphabet(m1, m2);
    std::size_t const        n2 = m2.num_states();
    std::vector<std::string> names;
    names.reserve(m1.num_states() * n2);
    for (auto const& q : m1.states()) {
      auto left = tuple_items(q);
      for (auto const& p : m2.states()) {
        auto        right = tuple_items(p);
        std::string name  = "(";
        for (auto const& item : left) {
          name += item;
          name += ',';
        }
        for (std::size_t i = 0; i < right.size(); ++i) {
          name += right[i];
          name += (i + 1 == right.size() ? ')' : ',');
        }
        names.push_back(std::move(name));
      }
    }
    return Mealy::build(
        std::move(names), m1.alphabet(), [&](state_t s, letter_t a) {
          state_t  q = s / static_cast<state_t>(n2);
          state_t  p = s % static_cast<state_t>(n2);
          letter_t c = m1.out(q, a);
          return std::pair(m1.next(q, a) * static_cast<state_t>(n2)
                               + m2.next(p, c),
                           m2.out(p, c));
        });
  }

  Mealy power(Mealy const& m, std::size_t k, std::size_t budget) {
    if (k == 0) {
      throw Error(ErrorCode::invalid_argument, "power needs k >= 1");
    }
    std::size_t size = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (size > budget / m.num_states()) {
        // Report the exact count when it fits in 64 bits.
        unsigned __int128 exact = 1;
        for (std::size_t j = 0; j < k && exact <= ~std::uint64_t(0); ++j) {
          exact *= m.num_states();
        }
        std::string count = exact <= ~std::uint64_t(0)
                                ? std::to_string(static_cast<std::uint64_t>(exact))
                                : "more than 2^64";
        throw Error(ErrorCode::budget_exceeded,
                    "power needs " + count + " states, budget is "
                        + std::to_string(budget));
      }
      size *= m.num_states();
    }
    Mealy result = m;
    for (std::size_t i = 1; i < k; ++i) {
      result = product(result, m);
    }
    return result;
  }

  UnionResult disjoint_union_detailed(Mealy const& m1, Mealy const& m2) {
    require_same_alphabet(m1, m2);
    std::unordered_set<std::string> taken(m1.states().begin(),
                                          m1.states().end());
    taken.insert(m2.states().begin(), m2.states().end());
    std::vector<std::string>                         names = m1.states();
    std::vector<std::pair<std::string, std::string>> renamed;
    std::unordered_set<std::string> used(m1.states().begin(),
                                         m1.states().end());
    for (auto const& q : m2.states()) {
      if (used.contains(q)) {
        std::string fresh = fresh_name(q, taken);
        taken.insert(fresh);
        renamed.emplace_back(q, fresh);
        names.push_back(fresh);
      } else {
        names.push_back(q);
      }
      used.insert(names.back());
    }
    state_t const n1 = static_cast<state_t>(m1.num_states());
    Mealy         machine
        = Mealy::build(std::move(names), m1.alphabet(), [&](state_t q, letter_t a) {
            if (q < n1) {
              return std::pair(m1.next(q, a), m1.out(q, a));
            }
            return std::pair(m2.next(q - n1, a) + n1, m2.out(q - n1, a));
          });
    return {std::move(machine), std::move(renamed)};
  }

  Mealy disjoint_union(Mealy const& m1, Mealy const& m2) {
    return disjoint_union_detailed(m1, m2).machine;
  }

  std::vector<state_t> trivial_core(Mealy const& m) {
    std::vector<bool> in(m.num_states());
    for (state_t q = 0; q < m.num_states(); ++q) {
      in[q] = true;
      for (letter_t a = 0; a < m.num_letters(); ++a) {
        if (m.out(q, a) != a) {
          in[q] = false;
        }
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (state_t q = 0; q < m.num_states(); ++q) {
        if (!in[q]) {
          continue;
        }
        for (letter_t a = 0; a < m.num_letters(); ++a) {
          if (!in[m.next(q, a)]) {
            in[q]   = false;
            changed = true;
            break;
          }
        }
      }
    }
    std::vector<state_t> core;
    for (state_t q = 0; q < m.num_states(); ++q) {
      if (in[q]) {
        core.push_back(q);
      }
    }
    return core;
  }

  Mealy reduction(Mealy const& m) {
    auto core = trivial_core(m);
    if (core.empty()) {
      return m;
    }
    std::vector<bool> in(m.num_states(), false);
    for (state_t q : core) {
      in[q] = true;
    }
    // New indices: survivors keep their relative order; the sink takes the
    // slot of the first core state.
    std::vector<state_t>     index(m.num_states());
    std::vector<std::string> names;
    std::unordered_set<std::string> survivors;
    state_t sink = 0;
    for (state_t q = 0; q < m.num_states(); ++q) {
      if (!in[q]) {
        index[q] = static_cast<state_t>(names.size());
        names.push_back(m.states()[q]);
        survivors.insert(m.states()[q]);
      } else if (q == core.front()) {
        sink = static_cast<state_t>(names.size());
        names.emplace_back();
      }
    }
    for (state_t q : core) {
      index[q] = sink;
    }
    names[sink] = core.size() == 1 ? m.states()[core.front()]
                                   : fresh_name("e", survivors);
    std::vector<state_t> original;  // representative per new index
    for (state_t q = 0; q < m.num_states(); ++q) {
      if (!in[q] || q == core.front()) {
        original.push_back(q);
      }
    }
    return Mealy::build(std::move(names), m.alphabet(), [&](state_t s, letter_t a) {
      if (s == sink) {
        return std::pair(sink, a);
      }
      state_t q = original[s];
      return std::pair(index[m.next(q, a)], m.out(q, a));
    });
  }

}  // namespace agt
