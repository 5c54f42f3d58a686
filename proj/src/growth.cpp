#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>
#include <unordered_set>

#include "agt/action.hpp"
#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "enumerate.hpp"
#include "hash.hpp"

namespace agt {

  using code_t = SignedAction::code_t;

  namespace {
    using Word    = std::vector<code_t>;
    using WordSet = std::unordered_set<Word, detail::VectorHash>;

    struct SectionMaps {
      SectionMaps(SignedAction const& a, bool with_preimages)
          : action(a), preimages(with_preimages) {
        if (with_preimages) {
          pred.resize(a.num_codes() * a.num_letters());
          for (code_t c = 0; c < a.num_codes(); ++c) {
            for (letter_t x = 0; x < a.num_letters(); ++x) {
              pred[a.next(c, x) * a.num_letters() + x] = c;
            }
          }
        }
      }

      // Neighbours of w: its sections w·a and, with preimages, the words w'
      // with w'·a = w.
      template <typename Func>
      void for_each_neighbour(Word const& w, Word& scratch, Func&& f) const {
        for (letter_t a = 0; a < action.num_letters(); ++a) {
          action.apply(w, a, scratch);
          f(scratch);
        }
        if (!preimages) {
          return;
        }
        for (letter_t a = 0; a < action.num_letters(); ++a) {
          scratch.resize(w.size());
          letter_t x = a;
          for (std::size_t i = w.size(); i-- > 0;) {
            code_t c   = pred[w[i] * action.num_letters() + x];
            scratch[i] = c;
            x          = action.out(c, x);
          }
          f(scratch);
        }
      }

      SignedAction const& action;
      bool                preimages;
      std::vector<code_t> pred;
    };

    // Orbit size of `start`, adding every visited word to `seen`. Returns 0
    // if the shared budget counter passes `budget`.
    std::size_t orbit_size(SectionMaps const&       maps,
                           Word const&              start,
                           WordSet&                 seen,
                           std::atomic<std::size_t>& spent,
                           std::size_t              budget) {
      std::deque<Word> queue{start};
      seen.insert(start);
      std::size_t size = 1;
      Word        scratch;
      while (!queue.empty()) {
        Word w = std::move(queue.front());
        queue.pop_front();
        maps.for_each_neighbour(w, scratch, [&](Word const& v) {
          if (seen.insert(v).second) {
            queue.push_back(v);
            ++size;
          }
        });
        if (spent.fetch_add(1) + 1 > budget) {
          return 0;
        }
      }
      return size;
    }
  }  // namespace

  GrowthReport growth_chi(Mealy const&  m,
                          std::size_t   n_max,
                          std::size_t   budget,
                          GrowthOptions options) {
    require_invertible(m);
    auto flags = classify(m);
    if (options.signed_inputs && !flags.bireversible) {
      throw Error(ErrorCode::not_reversible,
                  "signed inputs need a bireversible machine");
    }
    SignedAction action(m);
    SectionMaps  maps(action, options.signed_inputs);
    // For a bireversible machine every map w ↦ w·a permutes Q̃^n, so orbits
    // partition the level and one BFS per orbit suffices.
    bool const partition = flags.bireversible;

    std::vector<std::uint32_t> letters(action.num_codes());
    for (code_t c = 0; c < letters.size(); ++c) {
      letters[c] = c;
    }
    auto inverse = [&](code_t c) { return action.inverse_code(c); };

    GrowthReport report;
    for (std::size_t n = 1; n <= n_max; ++n) {
      GrowthLevel level;
      level.n = n;
      std::atomic<std::size_t> spent{0};
      std::size_t              best     = SIZE_MAX;
      bool                     exceeded = false;

      if (partition) {
        WordSet seen;
        for (std::size_t first = 0; first < letters.size() && !exceeded;
             ++first) {
          detail::for_each_reduced_word(
              letters, inverse, n, first, [&](Word const& w) {
                if (seen.contains(w)) {
                  return true;
                }
                std::size_t size = orbit_size(maps, w, seen, spent, budget);
                if (size == 0) {
                  exceeded = true;
                  return false;
                }
                best = std::min(best, size);
                return true;
              });
        }
      } else {
        std::size_t const threads = std::max<std::size_t>(1, options.threads);
        std::vector<std::size_t> local_best(threads, SIZE_MAX);
        std::atomic<bool>        stop{false};
        auto work = [&](std::size_t t) {
          std::size_t counter = 0;
          for (std::size_t first = 0; first < letters.size(); ++first) {
            bool ok = detail::for_each_reduced_word(
                letters, inverse, n, first, [&](Word const& w) {
                  if (stop.load()) {
                    return false;
                  }
                  if (counter++ % threads != t) {
                    return true;
                  }
                  WordSet     seen;
                  std::size_t size = orbit_size(maps, w, seen, spent, budget);
                  if (size == 0) {
                    stop.store(true);
                    return false;
                  }
                  local_best[t] = std::min(local_best[t], size);
                  return true;
                });
            if (!ok) {
              return;
            }
          }
        };
        if (threads == 1) {
          work(0);
        } else {
          std::vector<std::thread> pool;
          for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
          }
          for (auto& th : pool) {
            th.join();
          }
        }
        exceeded = stop.load();
        best     = *std::min_element(local_best.begin(), local_best.end());
      }

      level.explored = exceeded ? budget : spent.load();
      if (!exceeded && best != SIZE_MAX) {
        level.chi = best;
      }
      report.levels.push_back(level);
    }

    // Monotonicity and the longest constant window among computed levels;
    // ties go to the later window.
    std::size_t previous  = 0;
    bool        have_prev = false;
    std::size_t run_start = 0;
    for (auto const& level : report.levels) {
      if (!level.chi) {
        have_prev = false;
        continue;
      }
      if (have_prev && *level.chi < previous) {
        report.monotone = false;
      }
      if (!have_prev || *level.chi != previous) {
        run_start = level.n;
      }
      previous  = *level.chi;
      have_prev = true;
      std::size_t len = level.n - run_start;
      if (!report.constant_window
          || len >= report.constant_window->second
                        - report.constant_window->first) {
        report.constant_window = std::pair(run_start, level.n);
      }
    }
    return report;
  }

}  // namespace agt
