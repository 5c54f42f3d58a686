#ifndef AGT_DYNAMICS_HPP_
#define AGT_DYNAMICS_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "agt/graph.hpp"
#include "agt/machine.hpp"
#include "agt/words.hpp"

namespace agt {

  ////////////////////////////////////////////////////////////////////////
  // Coupled action and the word problem
  ////////////////////////////////////////////////////////////////////////

  struct ActResult {
    LetterWord output;
    GroupWord  section;
  };

  //! The rightmost letter of `state_word` acts first. Throws not_invertible
  //! when inverse letters are used on a non-invertible machine.
  ActResult act(Mealy const&                 m,
                std::span<SignedState const> state_word,
                std::span<letter_t const>    input);

  //! Section-closure decision of w = 1. Throws not_invertible.
  bool is_identity(Mealy const& m, std::span<SignedState const> w);

  //! Whether two positive words induce the same map on A*, by bisimulation of
  //! their section closures. Works on any machine.
  bool same_action(Mealy const&                 m,
                   std::span<SignedState const> u,
                   std::span<SignedState const> v);

  //! Smallest n <= bound with w^n = 1; nullopt means the bound was exceeded.
  std::optional<std::size_t> order_of(Mealy const&                 m,
                                      std::span<SignedState const> w,
                                      std::size_t                  bound);

  //! Shortlex-least input prefix u, |u| <= prefix_bound, whose section
  //! consists of sink letters only; nullopt means undetermined.
  //! Throws no_sink, not_invertible.
  std::optional<LetterWord> g_regular(Mealy const&                 m,
                                      std::span<SignedState const> w,
                                      std::size_t prefix_bound);

  ////////////////////////////////////////////////////////////////////////
  // Orbits
  ////////////////////////////////////////////////////////////////////////

  //! x·y^ω over Q̃, read by the enriched dual from the left.
  struct PeriodicPoint {
    GroupWord preperiod;
    GroupWord period;

    //! Shortest preperiod with a primitive period; unique for the ω-word.
    static PeriodicPoint canonical(GroupWord preperiod, GroupWord period);

    bool operator==(PeriodicPoint const&) const = default;
  };

  std::string format_point(Mealy const& m, PeriodicPoint const& p);

  struct OrbitStats {
    std::size_t vertices        = 0;
    std::size_t edges           = 0;
    std::size_t max_word_length = 0;
  };

  struct FiniteOrbit {
    LabeledGraph graph;
    //! Vertex i of graph as a point, for periodic orbits only.
    std::vector<PeriodicPoint> points;
  };

  struct ExceededBound {
    std::size_t visited = 0;
  };

  struct OrbitResult {
    std::variant<FiniteOrbit, ExceededBound> outcome;
    OrbitStats                               meta;

    bool finite() const noexcept {
      return std::holds_alternative<FiniteOrbit>(outcome);
    }

    //! Throws invalid_argument unless finite.
    FiniteOrbit const& orbit() const;
  };

  //! BFS orbit of an input word under Q (and Q⁻¹ when `signed_generators`).
  OrbitResult orbit_of_word(Mealy const&              m,
                            std::span<letter_t const> v,
                            std::size_t               max_vertices,
                            bool                      signed_generators);

  //! Component of `point` in the level-k graph with edges v -q-> q∘v, q ∈ Q̃.
  //! Throws not_invertible, invalid_argument on |point| != k.
  LabeledGraph schreier_level(Mealy const&              m,
                              std::size_t               k,
                              std::span<letter_t const> point);

  //! Orbit of x·y^ω under the states of the enriched dual. Throws
  //! not_invertible.
  OrbitResult periodic_orbit(Mealy const&         m,
                             PeriodicPoint const& p,
                             std::size_t          max_vertices);

  //! Relation read off a finite orbit of a purely periodic point y^ω:
  //! returns mirror(y)^r, the word acting trivially under the rightmost-first
  //! convention, after checking it with is_identity.
  //! Throws invalid_argument, verification_failed.
  GroupWord extract_relation(Mealy const& m, OrbitResult const& orbit);

  //! The exponent of the permutation group of A generated by a ↦ a∘q over
  //! q ∈ Q̃, or nullopt when the group has more than `max_order` elements.
  std::optional<std::size_t> transition_group_exponent(Mealy const& m,
                                                       std::size_t  max_order
                                                       = 100000);

  //! reduce(period) is empty.
  bool essentially_trivial(PeriodicPoint const& p);

  ////////////////////////////////////////////////////////////////////////
  // Growth, relations, levels
  ////////////////////////////////////////////////////////////////////////

  struct GrowthOptions {
    bool        signed_inputs = false;
    std::size_t threads       = 1;
  };

  struct GrowthLevel {
    std::size_t n = 0;
    //! nullopt when the level ran out of budget.
    std::optional<std::size_t> chi;
    std::size_t                explored = 0;
  };

  struct GrowthReport {
    std::vector<GrowthLevel> levels;
    //! Largest [first, last] with constant χ among computed levels.
    std::optional<std::pair<std::size_t, std::size_t>> constant_window;
    bool                                               monotone = true;
  };

  //! χ(n) for n = 1..n_max; `budget` bounds the words visited per level.
  //! Throws not_invertible, and not_reversible for signed inputs on a
  //! machine that is not bireversible.
  GrowthReport growth_chi(Mealy const&  m,
                          std::size_t   n_max,
                          std::size_t   budget,
                          GrowthOptions options = {});

  struct RelationOptions {
    bool        positive_only = false;
    bool        pairs         = false;
    std::size_t threads       = 1;
  };

  struct RelationReport {
    std::vector<GroupWord>                           relations;
    std::vector<std::pair<GroupWord, GroupWord>>     pairs;
  };

  //! Identity sinks are left out of the generating set. General mode needs
  //! an invertible machine (throws not_invertible).
  RelationReport find_relations(Mealy const&    m,
                                std::size_t     max_len,
                                RelationOptions options = {});

  struct LevelTransitivity {
    std::size_t k = 0;
    //! Single strongly connected orbit on Q^k.
    bool transitive = false;
    //! Single component of the underlying undirected graph.
    bool connected = false;
  };

  //! The semigroup of the dual acting on Q^k, k = 1..k_max. Throws
  //! budget_exceeded when |Q|^k > budget.
  std::vector<LevelTransitivity> level_transitive(Mealy const& m,
                                                  std::size_t  k_max,
                                                  std::size_t  budget
                                                  = 1'000'000);

  //! Cayley graph of the level-k quotient: vertex g, edge g -q-> g∘π_q, so a
  //! word labels a loop at the root iff it acts trivially on level k.
  //! Throws not_invertible, budget_exceeded.
  LabeledGraph level_quotient_cayley(Mealy const& m,
                                     std::size_t  k,
                                     std::size_t  budget);

}  // namespace agt

#endif  // AGT_DYNAMICS_HPP_
