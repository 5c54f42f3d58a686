#ifndef AGT_MACHINE_HPP_
#define AGT_MACHINE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace agt {

  using state_t  = std::uint32_t;
  using letter_t = std::uint32_t;

  //! True for plain identifiers, i.e. tokens matching [A-Za-z0-9_]+.
  bool is_identifier(std::string_view s) noexcept;

  //! True for the labels a machine may carry. Besides plain identifiers these
  //! include the labels produced by the algebra operations: `q^-1`, `(p,q)`,
  //! and nestings of both. The arrow `->` is never a label.
  bool is_label(std::string_view s) noexcept;

  //! A complete deterministic letter-to-letter transducer (Q, A, δ, λ).
  //!
  //! States and letters are addressed by their index in declaration order.
  //! Values are immutable after construction.
  class Mealy {
   public:
    //! Transition and output tables are row-major by state: entry
    //! `q * alphabet.size() + a`.
    Mealy(std::vector<std::string> states,
          std::vector<std::string> alphabet,
          std::vector<state_t>     transition,
          std::vector<letter_t>    output);

    //! Builds a machine from a function `(q, a) -> std::pair<state, letter>`.
    template <typename Func>
    static Mealy build(std::vector<std::string> states,
                       std::vector<std::string> alphabet,
                       Func&&                   edge) {
      std::size_t const     n = states.size(), k = alphabet.size();
      std::vector<state_t>  delta(n * k);
      std::vector<letter_t> lambda(n * k);
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t a = 0; a < k; ++a) {
          auto [p, b] = edge(static_cast<state_t>(q), static_cast<letter_t>(a));
          delta[q * k + a]  = static_cast<state_t>(p);
          lambda[q * k + a] = static_cast<letter_t>(b);
        }
      }
      return Mealy(std::move(states),
                   std::move(alphabet),
                   std::move(delta),
                   std::move(lambda));
    }

    std::size_t num_states() const noexcept {
      return _states.size();
    }

    std::size_t num_letters() const noexcept {
      return _alphabet.size();
    }

    //! δ(q, a)
    state_t next(state_t q, letter_t a) const noexcept {
      return _transition[q * _alphabet.size() + a];
    }

    //! λ(q, a)
    letter_t out(state_t q, letter_t a) const noexcept {
      return _output[q * _alphabet.size() + a];
    }

    std::vector<std::string> const& states() const noexcept {
      return _states;
    }

    std::vector<std::string> const& alphabet() const noexcept {
      return _alphabet;
    }

    std::vector<state_t> const& transition_table() const noexcept {
      return _transition;
    }

    std::vector<letter_t> const& output_table() const noexcept {
      return _output;
    }

    std::optional<state_t>  find_state(std::string_view name) const;
    std::optional<letter_t> find_letter(std::string_view name) const;

    //! Throw Error(unknown_identifier) when the name is not declared.
    state_t  state_index(std::string_view name) const;
    letter_t letter_index(std::string_view name) const;

    bool operator==(Mealy const&) const = default;

   private:
    std::vector<std::string> _states;
    std::vector<std::string> _alphabet;
    std::vector<state_t>     _transition;
    std::vector<letter_t>    _output;
  };

  //! A letter of Q̃ = Q ∪ Q⁻¹. Ordered as Q (declaration order) before Q⁻¹.
  struct SignedState {
    state_t base    = 0;
    bool    inverse = false;

    SignedState inverted() const noexcept {
      return {base, !inverse};
    }

    bool operator==(SignedState const&) const = default;

    std::strong_ordering operator<=>(SignedState const& that) const noexcept {
      if (inverse != that.inverse) {
        return inverse ? std::strong_ordering::greater
                       : std::strong_ordering::less;
      }
      return base <=> that.base;
    }
  };

  struct ClassFlags {
    bool                 invertible                = false;
    bool                 reversible                = false;
    bool                 output_reversible         = false;
    bool                 bireversible              = false;
    std::vector<state_t> sink_states               = {};
    bool                 sink_accessible_from_all  = false;

    bool operator==(ClassFlags const&) const = default;
  };

  //! Parse the `mealy v1` text format.
  Mealy parse_machine(std::string_view text);

  //! Canonical `mealy v1` text: LF endings, transitions in state × letter order.
  std::string serialize(Mealy const& m);

  ClassFlags classify(Mealy const& m);

  //! Row and column checks used by classify and by operations with
  //! preconditions; they return the offending index, if any.
  std::optional<state_t>  non_bijective_output_row(Mealy const& m);
  std::optional<letter_t> non_bijective_transition_column(Mealy const& m);

  //! δ(e, a) = e and λ(e, a) = a for every letter a.
  bool is_identity_sink(Mealy const& m, state_t e) noexcept;

}  // namespace agt

#endif  // AGT_MACHINE_HPP_
