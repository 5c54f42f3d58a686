#ifndef AGT_ACTION_HPP_
#define AGT_ACTION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "agt/machine.hpp"
#include "agt/words.hpp"

namespace agt {

  //! Flat tables for the action of Q̃ on letters.
  //!
  //! A signed state is encoded as `base` for q and `base + |Q|` for q⁻¹.
  //! Inverse rows are present only when the machine is invertible.
  class SignedAction {
   public:
    using code_t = std::uint32_t;

    explicit SignedAction(Mealy const& m);

    std::size_t num_states() const noexcept {
      return _n;
    }

    std::size_t num_letters() const noexcept {
      return _k;
    }

    //! 2|Q| when invertible, |Q| otherwise.
    std::size_t num_codes() const noexcept {
      return _invertible ? 2 * _n : _n;
    }

    bool invertible() const noexcept {
      return _invertible;
    }

    code_t code(SignedState s) const noexcept {
      return s.base + (s.inverse ? static_cast<code_t>(_n) : 0);
    }

    SignedState decode(code_t c) const noexcept {
      return c < _n ? SignedState{c, false}
                    : SignedState{static_cast<state_t>(c - _n), true};
    }

    code_t inverse_code(code_t c) const noexcept {
      return c < _n ? c + static_cast<code_t>(_n)
                    : c - static_cast<code_t>(_n);
    }

    code_t next(code_t c, letter_t a) const noexcept {
      return _next[c * _k + a];
    }

    letter_t out(code_t c, letter_t a) const noexcept {
      return _out[c * _k + a];
    }

    //! The code stands for an identity sink or its inverse.
    bool trivial(code_t c) const noexcept {
      return _trivial[c];
    }

    //! Throws not_invertible if w has an inverse letter and the machine is
    //! not invertible.
    std::vector<code_t> encode(std::span<SignedState const> w) const;
    GroupWord           decode(std::span<code_t const> w) const;

    //! Apply w (rightmost first) to one letter; writes the section at that
    //! letter into `section` (resized to |w|) and returns the image.
    letter_t apply(std::span<code_t const> w,
                   letter_t                a,
                   std::vector<code_t>&    section) const;

    //! Erase trivial codes and freely reduce, in place.
    void normalize(std::vector<code_t>& w) const;

   private:
    std::size_t         _n;
    std::size_t         _k;
    bool                _invertible;
    std::vector<code_t> _next;
    std::vector<letter_t> _out;
    std::vector<bool>   _trivial;
  };

  void require_invertible(Mealy const& m);

}  // namespace agt

#endif  // AGT_ACTION_HPP_
