#ifndef AGT_ALGEBRA_HPP_
#define AGT_ALGEBRA_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "agt/machine.hpp"

namespace agt {

  //! States and letters swap roles: a -p|q-> b for every edge p -a|b-> q.
  Mealy dual(Mealy const& m);

  //! States `q^-1`; throws not_invertible.
  Mealy inverse(Mealy const& m);

  //! Alphabet A followed by `a^-1`; adds p -a^-1|b^-1-> q for each
  //! q -a|b-> p. Throws not_reversible.
  Mealy enrich(Mealy const& m);

  //! enrich(dual(m)); throws not_invertible.
  Mealy enriched_dual(Mealy const& m);

  //! The input of m1 feeds m1, its output feeds m2. States are pairs in
  //! row-major order rendered `(q,p)`; tuple labels are flattened, so
  //! `((a,b),c)` is rendered `(a,b,c)`. Throws alphabet_mismatch.
  Mealy product(Mealy const& m1, Mealy const& m2);

  constexpr std::size_t default_state_budget = 1'000'000;

  //! (m^{k-1}) m; throws budget_exceeded when |Q|^k > budget.
  Mealy power(Mealy const& m, std::size_t k,
              std::size_t budget = default_state_budget);

  struct UnionResult {
    Mealy machine;
    //! (original name, new name) for every state of m2 renamed.
    std::vector<std::pair<std::string, std::string>> renamed;
  };

  //! States of m1 then states of m2; a state of m2 whose name is taken gets
  //! the first free suffix `_0`, `_1`, ... Throws alphabet_mismatch.
  UnionResult disjoint_union_detailed(Mealy const& m1, Mealy const& m2);
  Mealy       disjoint_union(Mealy const& m1, Mealy const& m2);

  //! Collapses the greatest set T of states with λ(q,a) = a and δ(q,a) ∈ T
  //! into one identity sink placed at the position of the first member of
  //! T. The sink keeps its name when |T| = 1 and is called `e` otherwise
  //! (with a suffix on collision).
  Mealy reduction(Mealy const& m);

  //! The greatest set T described above, in state order.
  std::vector<state_t> trivial_core(Mealy const& m);

  //! Splits a flattened tuple label `(a,b,c)` into its items; any other
  //! label is returned as a single item.
  std::vector<std::string> tuple_items(std::string const& label);

}  // namespace agt

#endif  // AGT_ALGEBRA_HPP_
