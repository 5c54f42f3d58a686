#ifndef AGT_CLI_HPP_
#define AGT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace agt::cli {

  //! Exit statuses.
  inline constexpr int exit_ok        = 0;
  inline constexpr int exit_error     = 1;
  inline constexpr int exit_exhausted = 2;

  //! Runs one command line; `args` excludes the program name. A machine
  //! argument `-` reads from `in`.
  int run(std::vector<std::string> const& args,
          std::istream&                   in,
          std::ostream&                   out,
          std::ostream&                   err);

}  // namespace agt::cli

#endif  // AGT_CLI_HPP_
