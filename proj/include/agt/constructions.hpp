#ifndef AGT_CONSTRUCTIONS_HPP_
#define AGT_CONSTRUCTIONS_HPP_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agt/machine.hpp"

namespace agt {

  //! A finite group by multiplication table; element 0 is the identity.
  class FiniteGroupTable {
   public:
    //! Validates the table. Throws no_identity, no_inverse, not_associative
    //! with witnesses; invalid_argument on malformed sizes or names.
    FiniteGroupTable(std::vector<std::string> elements,
                     std::vector<std::size_t> mul);

    std::size_t size() const noexcept {
      return _elements.size();
    }

    std::vector<std::string> const& elements() const noexcept {
      return _elements;
    }

    std::size_t mul(std::size_t i, std::size_t j) const noexcept {
      return _mul[i * _elements.size() + j];
    }

    std::size_t inv(std::size_t i) const noexcept {
      return _inv[i];
    }

    //! Associativity was sampled rather than checked exhaustively.
    bool associativity_sampled() const noexcept {
      return _sampled;
    }

    bool operator==(FiniteGroupTable const&) const = default;

   private:
    std::vector<std::string> _elements;
    std::vector<std::size_t> _mul;
    std::vector<std::size_t> _inv;
    bool                     _sampled = false;
  };

  //! Z_n with elements named 0..n-1.
  FiniteGroupTable zn_group(std::size_t n);

  //! Parse the `group v1` text format.
  FiniteGroupTable group_from_table(std::string_view text);

  std::string serialize(FiniteGroupTable const& g);

  //! One identity-sink state `e`.
  Mealy sink_machine(std::vector<std::string> const& alphabet);

  //! m ⊔ sink; the sink is called `e`, or `e_0`, `e_1`, ... on collision.
  Mealy add_sink(Mealy const& m);

  //! ∂S_Q: states Q, alphabet Q then `e`; q reading x stays at q and writes
  //! e if x = q, x otherwise. Throws invalid_argument on an empty Q or a
  //! state named e.
  Mealy s_q_dual(std::vector<std::string> const& q);

  //! S_Q = dual(∂S_Q).
  Mealy s_q(std::vector<std::string> const& q);

  //! A_H = dual(dual(b^e) ⊔ ∂S_H), where ∂S_H is built over b's states
  //! plus the sink letter. Throws not_invertible, invalid_argument.
  Mealy dual_embed_sum(Mealy const& b, std::vector<std::string> const& h);

  //! C(G): states named by elements with `state_prefix`, letters by
  //! elements. g -x|x-> gx if g ≠ x⁻¹, and g -x|e-> e otherwise.
  Mealy cayley_machine(FiniteGroupTable const& g,
                       std::string const&      state_prefix = "");

  //! C̃(G): as C(G), except e -x|e-> x.
  Mealy bi_cayley_machine(FiniteGroupTable const& g,
                          std::string const&      state_prefix = "");

  struct PartialSums {
    //! φ(j) = e_1 v_1 + ... + e_j v_j mod n.
    std::vector<std::size_t> phi;
    std::set<std::size_t>    sums;
    //! Set when the word is nonempty and its total is 0.
    bool final_zero = false;
  };

  //! `u` lists (residue, inverse) pairs. Throws invalid_argument on a residue
  //! out of range.
  PartialSums partial_sums(std::span<std::pair<std::size_t, bool> const> u,
                           std::size_t                                   n);

}  // namespace agt

#endif  // AGT_CONSTRUCTIONS_HPP_
