#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "agt/action.hpp"
#include "agt/algebra.hpp"
#include "agt/dynamics.hpp"
#include "agt/error.hpp"
#include "hash.hpp"

namespace agt {

  using code_t = SignedAction::code_t;

  namespace {
    using Word = std::vector<code_t>;

    std::vector<std::string> signed_names(Mealy const& m) {
      std::vector<std::string> names = m.states();
      for (auto const& q : m.states()) {
        names.push_back(q + "^-1");
      }
      return names;
    }

    std::size_t checked_pow(std::size_t base, std::size_t k, std::size_t cap) {
      std::size_t result = 1;
      for (std::size_t i = 0; i < k; ++i) {
        if (base != 0 && result > cap / base) {
          return cap + 1;
        }
        result *= base;
      }
      return result;
    }
  }  // namespace

  FiniteOrbit const& OrbitResult::orbit() const {
    if (auto const* f = std::get_if<FiniteOrbit>(&outcome)) {
      return *f;
    }
    throw Error(ErrorCode::invalid_argument, "orbit exceeded its bound");
  }

  ////////////////////////////////////////////////////////////////////////
  // Orbits of finite words
  ////////////////////////////////////////////////////////////////////////

  OrbitResult orbit_of_word(Mealy const&              m,
                            std::span<letter_t const> v,
                            std::size_t               max_vertices,
                            bool                      signed_generators) {
    if (signed_generators) {
      require_invertible(m);
    }
    SignedAction action(m);
    std::size_t  generators = signed_generators ? 2 * m.num_states()
                                                : m.num_states();
    auto labels = signed_names(m);
    labels.resize(generators);
    LabeledGraph graph(labels);

    using Input = std::vector<letter_t>;
    std::unordered_map<Input, std::size_t, detail::VectorHash> index;
    std::vector<Input>                                         words;
    OrbitResult                                                result;
    result.meta.max_word_length = v.size();

    auto add = [&](Input const& w) -> std::optional<std::size_t> {
      auto it = index.find(w);
      if (it != index.end()) {
        return it->second;
      }
      if (words.size() == max_vertices) {
        return std::nullopt;
      }
      index.emplace(w, words.size());
      words.push_back(w);
      graph.add_vertex(format_letters(m, w));
      return words.size() - 1;
    };

    add(Input(v.begin(), v.end()));
    Input image;
    Word  one(1), section;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (code_t g = 0; g < generators; ++g) {
        image.resize(v.size());
        one[0] = g;
        for (std::size_t j = 0; j < v.size(); ++j) {
          image[j] = action.apply(one, words[i][j], section);
          one[0]   = section[0];
        }
        auto target = add(image);
        if (!target) {
          result.outcome     = ExceededBound{max_vertices};
          result.meta.vertices = words.size();
          result.meta.edges    = graph.edges().size();
          return result;
        }
        graph.add_edge(i, g, *target);
      }
    }
    result.meta.vertices = graph.num_vertices();
    result.meta.edges    = graph.edges().size();
    result.outcome       = FiniteOrbit{std::move(graph), {}};
    return result;
  }

  LabeledGraph schreier_level(Mealy const&              m,
                              std::size_t               k,
                              std::span<letter_t const> point) {
    require_invertible(m);
    if (point.size() != k) {
      throw Error(ErrorCode::invalid_argument,
                  "point has length " + std::to_string(point.size())
                      + ", expected " + std::to_string(k));
    }
    for (letter_t a : point) {
      if (a >= m.num_letters()) {
        throw Error(ErrorCode::invalid_argument, "letter index out of range");
      }
    }
    // The level has |A|^k words, so the orbit is always finite.
    auto const level_size
        = checked_pow(m.num_letters(), k, std::size_t(1) << 40);
    auto result = orbit_of_word(m, point, level_size, true);
    return std::get<FiniteOrbit>(std::move(result.outcome)).graph;
  }

  ////////////////////////////////////////////////////////////////////////
  // Periodic points
  ////////////////////////////////////////////////////////////////////////

  namespace {
    template <typename T>
    void canonicalize(std::vector<T>& x, std::vector<T>& y) {
      // Primitive root: keep dividing the length by primes q while y has
      // period n/q.
      std::size_t              n = y.size();
      std::vector<std::size_t> primes;
      for (std::size_t q = 2, rest = n; rest > 1; ++q) {
        if (q * q > rest) {
          q = rest;
        }
        if (rest % q == 0) {
          primes.push_back(q);
          while (rest % q == 0) {
            rest /= q;
          }
        }
      }
      for (std::size_t q : primes) {
        while (n % q == 0
               && std::equal(y.begin() + n / q, y.begin() + n, y.begin())) {
          n /= q;
        }
      }
      y.resize(n);
      // Absorb the preperiod tail into the period: x·c and y = y'c give
      // the same ω-word as x with period c·y'. `shift` counts the right
      // rotations applied so far.
      std::size_t const len   = y.size();
      std::size_t       shift = 0;
      while (!x.empty() && x.back() == y[(2 * len - 1 - shift) % len]) {
        x.pop_back();
        shift = (shift + 1) % len;
      }
      std::rotate(y.begin(), y.end() - shift, y.end());
    }
  }  // namespace

  PeriodicPoint PeriodicPoint::canonical(GroupWord preperiod,
                                         GroupWord period) {
    if (period.empty()) {
      throw Error(ErrorCode::invalid_argument, "the period must be nonempty");
    }
    canonicalize(preperiod, period);
    return {std::move(preperiod), std::move(period)};
  }

  std::string format_point(Mealy const& m, PeriodicPoint const& p) {
    std::string out = format_word(m, p.preperiod);
    if (!out.empty()) {
      out += ' ';
    }
    return out + "(" + format_word(m, p.period) + ")^w";
  }

  bool essentially_trivial(PeriodicPoint const& p) {
    return reduce(p.period).empty();
  }

  namespace {
    // The enriched dual as flat tables over letter codes (which coincide with
    // SignedAction codes of m).
    struct Dual {
      explicit Dual(Mealy const& m) : machine(enriched_dual(m)) {}

      state_t next(state_t s, code_t c) const {
        return machine.next(s, c);
      }

      code_t out(state_t s, code_t c) const {
        return machine.out(s, c);
      }

      template <typename W>
      state_t run(state_t s, W const& w) const {
        for (auto c : w) {
          s = next(s, c);
        }
        return s;
      }

      Mealy machine;
    };

    // Orbit vertices hold long periods, so they are stored with 16-bit
    // symbols and a single copy each.
    using sym_t   = std::uint16_t;
    using SymWord = std::vector<sym_t>;

    struct Point {
      SymWord x, y;

      bool operator==(Point const&) const = default;
    };

    std::uint64_t hash_symbols(SymWord const& w, std::uint64_t h) noexcept {
      std::size_t i = 0;
      for (; i + 4 <= w.size(); i += 4) {
        std::uint64_t chunk;
        std::memcpy(&chunk, w.data() + i, sizeof(chunk));
        h = (h ^ chunk) * 0x9e3779b97f4a7c15ULL;
        h ^= h >> 29;
      }
      for (; i < w.size(); ++i) {
        h = (h ^ w[i]) * 0x9e3779b97f4a7c15ULL;
        h ^= h >> 29;
      }
      return h;
    }

    std::size_t hash_point(Point const& p) noexcept {
      std::uint64_t h = hash_symbols(p.x, 0xcbf29ce484222325ULL ^ p.x.size());
      return static_cast<std::size_t>(hash_symbols(p.y, h ^ p.y.size()));
    }

    // Flat tables of the enriched dual: entry [s * codes + c].
    struct CompactDual {
      explicit CompactDual(Dual const& d)
          : codes(d.machine.num_letters()),
            next(d.machine.transition_table().begin(),
                 d.machine.transition_table().end()),
            out(d.machine.output_table().begin(),
                d.machine.output_table().end()) {}

      std::size_t   codes;
      std::vector<sym_t> next;
      std::vector<sym_t> out;
    };

    Point apply_generator(CompactDual const& d, state_t a, Point const& p) {
      Point image;
      image.x.resize(p.x.size());
      for (std::size_t i = 0; i < p.x.size(); ++i) {
        image.x[i] = d.out[a * d.codes + p.x[i]];
        a          = d.next[a * d.codes + p.x[i]];
      }
      // Read y until a returns; the outputs form one period of the image.
      state_t const start = a;
      std::size_t   len   = 0;
      do {
        image.y.resize(len + p.y.size());
        for (sym_t c : p.y) {
          image.y[len++] = d.out[a * d.codes + c];
          a              = d.next[a * d.codes + c];
        }
      } while (a != start);
      canonicalize(image.x, image.y);
      return image;
    }

    SymWord to_sym(Word const& w) {
      return SymWord(w.begin(), w.end());
    }

    Word from_sym(SymWord const& w) {
      return Word(w.begin(), w.end());
    }
  }  // namespace

  OrbitResult periodic_orbit(Mealy const&         m,
                             PeriodicPoint const& p,
                             std::size_t          max_vertices) {
    require_invertible(m);
    if (2 * m.num_states() > 0xffff) {
      throw Error(ErrorCode::invalid_argument,
                  "periodic orbits support at most 32767 states");
    }
    SignedAction action(m);
    Dual         d(m);
    CompactDual  cd(d);
    Point start{to_sym(action.encode(p.preperiod)),
                to_sym(action.encode(p.period))};
    if (start.y.empty()) {
      throw Error(ErrorCode::invalid_argument, "the period must be nonempty");
    }
    canonicalize(start.x, start.y);

    std::vector<Point>       points;
    std::vector<std::size_t> hashes;
    auto hash = [&](std::size_t i) { return hashes[i]; };
    auto eq   = [&](std::size_t i, std::size_t j) {
      return hashes[i] == hashes[j] && points[i] == points[j];
    };
    std::unordered_set<std::size_t, decltype(hash), decltype(eq)> index(
        16, hash, eq);
    OrbitResult result;

    // Candidates are appended to points and dropped again if already seen.
    auto add = [&](Point&& q) -> std::optional<std::size_t> {
      hashes.push_back(hash_point(q));
      points.push_back(std::move(q));
      auto it = index.find(points.size() - 1);
      if (it != index.end() || points.size() > max_vertices) {
        points.pop_back();
        hashes.pop_back();
        if (it != index.end()) {
          return *it;
        }
        return std::nullopt;
      }
      index.insert(points.size() - 1);
      auto const& added = points.back();
      result.meta.max_word_length = std::max(result.meta.max_word_length,
                                             added.x.size() + added.y.size());
      return points.size() - 1;
    };
    add(std::move(start));
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (state_t a = 0; a < m.num_letters(); ++a) {
        auto target = add(apply_generator(cd, a, points[i]));
        if (!target) {
          result.outcome       = ExceededBound{max_vertices};
          result.meta.vertices = points.size();
          result.meta.edges    = edges.size();
          return result;
        }
        edges.emplace_back(i, a, *target);
      }
    }
    FiniteOrbit finite{LabeledGraph(m.alphabet()), {}};
    for (auto const& q : points) {
      PeriodicPoint pp{action.decode(from_sym(q.x)),
                       action.decode(from_sym(q.y))};
      finite.graph.add_vertex(format_point(m, pp));
      finite.points.push_back(std::move(pp));
    }
    for (auto [src, label, dst] : edges) {
      finite.graph.add_edge(src, label, dst);
    }
    result.meta.vertices = points.size();
    result.meta.edges    = edges.size();
    result.outcome       = std::move(finite);
    return result;
  }

  namespace {
    std::size_t permutation_order(std::vector<state_t> const& perm) {
      std::size_t       order = 1;
      std::vector<bool> seen(perm.size(), false);
      for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) {
          continue;
        }
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
          seen[j] = true;
          ++len;
        }
        order = std::lcm(order, len);
      }
      return order;
    }
  }  // namespace

  GroupWord extract_relation(Mealy const& m, OrbitResult const& orbit) {
    auto const& finite = orbit.orbit();
    if (finite.points.empty()) {
      throw Error(ErrorCode::invalid_argument,
                  "extract_relation needs a periodic-point orbit");
    }
    auto const& root = finite.points[finite.graph.root()];
    if (!root.preperiod.empty()) {
      throw Error(ErrorCode::invalid_argument,
                  "extract_relation needs a purely periodic root point");
    }
    SignedAction action(m);
    Dual         d(m);
    // R is a common length at which every vertex period returns every state
    // of the dual to itself; then the blocks z_i^(R/|z_i|) form an invariant
    // set of words fixing every letter.
    std::size_t R = root.period.size();
    for (auto const& p : finite.points) {
      Word                 z = action.encode(p.period);
      std::vector<state_t> perm(m.num_letters());
      for (state_t s = 0; s < m.num_letters(); ++s) {
        perm[s] = d.run(s, z);
      }
      R = std::lcm(R, z.size() * permutation_order(perm));
    }
    std::size_t const r        = R / root.period.size();
    GroupWord         relation = repeat(mirror(root.period), r);
    if (!is_identity(m, relation)) {
      throw Error(ErrorCode::verification_failed,
                  "extracted word " + format_word(m, relation)
                      + " does not act trivially");
    }
    return relation;
  }

  std::optional<std::size_t> transition_group_exponent(Mealy const& m,
                                                       std::size_t  max_order) {
    require_invertible(m);
    Dual                              d(m);
    std::size_t const                 k = m.num_letters();
    std::vector<std::vector<state_t>> gens;
    for (code_t c = 0; c < 2 * m.num_states(); ++c) {
      std::vector<state_t> perm(k);
      for (state_t s = 0; s < k; ++s) {
        perm[s] = d.next(s, c);
      }
      gens.push_back(std::move(perm));
    }
    std::vector<state_t> identity(k);
    std::iota(identity.begin(), identity.end(), 0);
    std::unordered_map<std::vector<state_t>, bool, detail::VectorHash> seen{
        {identity, true}};
    std::deque<std::vector<state_t>> queue{identity};
    std::size_t                      exponent = 1;
    while (!queue.empty()) {
      auto g = std::move(queue.front());
      queue.pop_front();
      exponent = std::lcm(exponent, permutation_order(g));
      for (auto const& h : gens) {
        std::vector<state_t> gh(k);
        for (state_t s = 0; s < k; ++s) {
          gh[s] = h[g[s]];
        }
        if (seen.emplace(gh, true).second) {
          if (seen.size() > max_order) {
            return std::nullopt;
          }
          queue.push_back(std::move(gh));
        }
      }
    }
    return exponent;
  }

  ////////////////////////////////////////////////////////////////////////
  // Levels
  ////////////////////////////////////////////////////////////////////////

  std::vector<LevelTransitivity> level_transitive(Mealy const& m,
                                                  std::size_t  k_max,
                                                  std::size_t  budget) {
    std::vector<LevelTransitivity> levels;
    std::size_t const              n = m.num_states();
    for (std::size_t k = 1; k <= k_max; ++k) {
      std::size_t const size = checked_pow(n, k, budget);
      if (size > budget) {
        throw Error(ErrorCode::budget_exceeded,
                    "level " + std::to_string(k) + " has more than "
                        + std::to_string(budget) + " words");
      }
      // images[a][v]: the dual state a (a letter of m) reading the state word
      // with index v; digits are most significant first.
      std::vector<std::vector<std::uint32_t>> images(
          m.num_letters(), std::vector<std::uint32_t>(size));
      std::vector<state_t> word(k);
      for (std::size_t v = 0; v < size; ++v) {
        std::size_t rest = v;
        for (std::size_t i = k; i-- > 0;) {
          word[i] = static_cast<state_t>(rest % n);
          rest /= n;
        }
        for (letter_t a = 0; a < m.num_letters(); ++a) {
          letter_t    s     = a;
          std::size_t image = 0;
          for (state_t q : word) {
            image = image * n + m.next(q, s);
            s     = m.out(q, s);
          }
          images[a][v] = static_cast<std::uint32_t>(image);
        }
      }
      // Undirected connectivity by union-find.
      std::vector<std::size_t> parent(size);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      };
      std::size_t components = size;
      for (auto const& img : images) {
        for (std::size_t v = 0; v < size; ++v) {
          std::size_t a = find(v), b = find(img[v]);
          if (a != b) {
            parent[a] = b;
            --components;
          }
        }
      }
      // Strong connectivity: everything reachable from word 0 both ways.
      auto reach_all = [&](bool forward) {
        std::vector<std::vector<std::uint32_t>> reverse;
        if (!forward) {
          reverse.assign(size, {});
          for (auto const& img : images) {
            for (std::size_t v = 0; v < size; ++v) {
              reverse[img[v]].push_back(static_cast<std::uint32_t>(v));
            }
          }
        }
        std::vector<bool>        seen(size, false);
        std::vector<std::size_t> stack{0};
        seen[0]           = true;
        std::size_t count = 1;
        while (!stack.empty()) {
          std::size_t v = stack.back();
          stack.pop_back();
          auto visit = [&](std::size_t w) {
            if (!seen[w]) {
              seen[w] = true;
              ++count;
              stack.push_back(w);
            }
          };
          if (forward) {
            for (auto const& img : images) {
              visit(img[v]);
            }
          } else {
            for (auto w : reverse[v]) {
              visit(w);
            }
          }
        }
        return count == size;
      };
      LevelTransitivity level;
      level.k          = k;
      level.connected  = components == 1;
      level.transitive = level.connected && reach_all(true) && reach_all(false);
      levels.push_back(level);
    }
    return levels;
  }

  LabeledGraph level_quotient_cayley(Mealy const& m,
                                     std::size_t  k,
                                     std::size_t  budget) {
    require_invertible(m);
    SignedAction      action(m);
    std::size_t const n_words
        = checked_pow(m.num_letters(), k, std::size_t(1) << 40);
    if (n_words > (std::size_t(1) << 24)) {
      throw Error(ErrorCode::budget_exceeded,
                  "level " + std::to_string(k) + " is too large");
    }
    using Perm = std::vector<std::uint32_t>;
    // π_c for every code, on words indexed most significant letter first.
    std::vector<Perm> gens;
    std::vector<letter_t> word(k);
    Word                  one(1), section;
    for (code_t c = 0; c < action.num_codes(); ++c) {
      Perm perm(n_words);
      for (std::size_t v = 0; v < n_words; ++v) {
        std::size_t rest = v;
        for (std::size_t i = k; i-- > 0;) {
          word[i] = static_cast<letter_t>(rest % m.num_letters());
          rest /= m.num_letters();
        }
        one[0]            = c;
        std::size_t image = 0;
        for (letter_t a : word) {
          image  = image * m.num_letters() + action.apply(one, a, section);
          one[0] = section[0];
        }
        perm[v] = static_cast<std::uint32_t>(image);
      }
      gens.push_back(std::move(perm));
    }
    LabeledGraph graph(signed_names(m));
    std::unordered_map<Perm, std::size_t, detail::VectorHash> index;
    std::vector<Perm>                                         elements;
    std::vector<GroupWord>                                    names;
    Perm identity(n_words);
    std::iota(identity.begin(), identity.end(), 0);
    index.emplace(identity, 0);
    elements.push_back(identity);
    names.emplace_back();
    graph.add_vertex("1");
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (code_t c = 0; c < action.num_codes(); ++c) {
        Perm g(n_words);
        for (std::size_t v = 0; v < n_words; ++v) {
          g[v] = elements[i][gens[c][v]];
        }
        auto it = index.find(g);
        if (it == index.end()) {
          if (elements.size() == budget) {
            throw Error(ErrorCode::budget_exceeded,
                        "level-" + std::to_string(k)
                            + " quotient has more than "
                            + std::to_string(budget) + " elements");
          }
          it = index.emplace(g, elements.size()).first;
          elements.push_back(std::move(g));
          GroupWord name = names[i];
          name.push_back(action.decode(c));
          graph.add_vertex(format_word(m, name));
          names.push_back(std::move(name));
        }
        graph.add_edge(i, c, it->second);
      }
    }
    return graph;
  }

}  // namespace agt
