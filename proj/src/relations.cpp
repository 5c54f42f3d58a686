#include <algorithm>
#include <map>
#include <thread>

#include "agt/action.hpp"
#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "enumerate.hpp"
#include "hash.hpp"

namespace agt {

  using code_t = SignedAction::code_t;

  namespace {
    using Word = std::vector<code_t>;

    // Runs task(i) for i in [0, count) on up to `threads` threads.
    template <typename Task>
    void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
      threads = std::max<std::size_t>(1, std::min(threads, count));
      if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
          task(i);
        }
        return;
      }
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < count; i += threads) {
            task(i);
          }
        });
      }
      for (auto& th : pool) {
        th.join();
      }
    }

    // Images of every input word of length `depth` under w, as a fingerprint
    // of the action of w.
    std::vector<letter_t> fingerprint(SignedAction const& action,
                                      Word const&         w,
                                      std::size_t         depth) {
      std::vector<letter_t> result;
      std::size_t           total = 1;
      for (std::size_t i = 0; i < depth; ++i) {
        total *= action.num_letters();
      }
      Word current, section;
      for (std::size_t v = 0; v < total; ++v) {
        current           = w;
        std::size_t rest  = v;
        for (std::size_t i = 0; i < depth; ++i) {
          letter_t a = static_cast<letter_t>(rest % action.num_letters());
          rest /= action.num_letters();
          result.push_back(action.apply(current, a, section));
          current.swap(section);
        }
      }
      return result;
    }
  }  // namespace

  RelationReport find_relations(Mealy const&    m,
                                std::size_t     max_len,
                                RelationOptions options) {
    if (!options.positive_only) {
      require_invertible(m);
    }
    SignedAction action(m);
    auto         flags = classify(m);
    std::vector<bool> sink(m.num_states(), false);
    for (state_t e : flags.sink_states) {
      sink[e] = true;
    }
    std::vector<std::uint32_t> letters;
    for (state_t q = 0; q < m.num_states(); ++q) {
      if (!sink[q]) {
        letters.push_back(q);
      }
    }
    if (!options.positive_only) {
      for (state_t q = 0; q < m.num_states(); ++q) {
        if (!sink[q]) {
          letters.push_back(action.code({q, true}));
        }
      }
    }
    auto inverse = [&](code_t c) {
      return options.positive_only ? static_cast<code_t>(-1)
                                   : action.inverse_code(c);
    };
    auto acts_trivially = [&](Word const& w) {
      GroupWord g = action.decode(w);
      return flags.invertible ? is_identity(m, g) : same_action(m, g, {});
    };

    RelationReport report;
    std::vector<Word> all_words;  // positive words, for pair search
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::vector<std::vector<Word>> found(letters.size());
      std::vector<std::vector<Word>> words(letters.size());
      parallel_for(letters.size(), options.threads, [&](std::size_t first) {
        detail::for_each_reduced_word(
            letters, inverse, len, first, [&](Word const& w) {
              if (options.pairs) {
                words[first].push_back(w);
              }
              if (!options.positive_only) {
                // Keep w only if it is not larger than its inverse.
                for (std::size_t i = 0; i < len; ++i) {
                  code_t c = action.inverse_code(w[len - 1 - i]);
                  if (w[i] != c) {
                    if (w[i] > c) {
                      return true;
                    }
                    break;
                  }
                }
              }
              if (acts_trivially(w)) {
                found[first].push_back(w);
              }
              return true;
            });
      });
      for (std::size_t f = 0; f < letters.size(); ++f) {
        for (auto const& w : found[f]) {
          report.relations.push_back(action.decode(w));
        }
        all_words.insert(all_words.end(), words[f].begin(), words[f].end());
      }
    }

    if (options.pairs) {
      // Group candidate words by a finite-level fingerprint, then decide
      // equality exactly inside each group.
      std::size_t depth = 0;
      for (std::size_t total = 1; total * action.num_letters() <= 256;
           total *= action.num_letters()) {
        ++depth;
        if (action.num_letters() == 1) {
          break;
        }
      }
      std::vector<std::vector<letter_t>> prints(all_words.size());
      parallel_for(all_words.size(), options.threads, [&](std::size_t i) {
        prints[i] = fingerprint(action, all_words[i], depth);
      });
      std::map<std::vector<letter_t>, std::vector<std::size_t>> groups;
      for (std::size_t i = 0; i < all_words.size(); ++i) {
        groups[prints[i]].push_back(i);
      }
      auto equal = [&](Word const& u, Word const& v) {
        GroupWord gu = action.decode(u), gv = action.decode(v);
        if (flags.invertible) {
          GroupWord w = gu;
          auto      vi = invert(gv);
          w.insert(w.end(), vi.begin(), vi.end());
          return is_identity(m, w);
        }
        return same_action(m, gu, gv);
      };
      std::vector<std::pair<std::size_t, std::size_t>> found;
      for (auto const& [print, members] : groups) {
        for (std::size_t x = 0; x < members.size(); ++x) {
          for (std::size_t y = x + 1; y < members.size(); ++y) {
            Word const& u = all_words[members[x]];
            Word const& v = all_words[members[y]];
            if (!equal(u, v)) {
              continue;
            }
            // Skip pairs obtained from a shorter one by a common first or
            // last letter.
            if (u.front() == v.front()
                && equal(Word(u.begin() + 1, u.end()),
                         Word(v.begin() + 1, v.end()))) {
              continue;
            }
            if (u.back() == v.back()
                && equal(Word(u.begin(), u.end() - 1),
                         Word(v.begin(), v.end() - 1))) {
              continue;
            }
            found.emplace_back(members[x], members[y]);
          }
        }
      }
      // all_words is in shortlex order, so index order is shortlex order.
      std::sort(found.begin(), found.end());
      for (auto [i, j] : found) {
        report.pairs.emplace_back(action.decode(all_words[i]),
                                  action.decode(all_words[j]));
      }
    }
    return report;
  }

}  // namespace agt
