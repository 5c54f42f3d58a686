#ifndef AGT_CORPUS_HPP_
#define AGT_CORPUS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "agt/constructions.hpp"
#include "agt/machine.hpp"

namespace agt {

  struct CorpusEntry {
    std::string_view name;
    //! "mealy" or "group".
    std::string_view kind;
    std::string_view text;
  };

  //! Bundled entries sorted by name.
  std::vector<CorpusEntry> const& corpus();

  //! Throws unknown_identifier.
  CorpusEntry const& corpus_entry(std::string_view name);

  //! Names of the bundled machines (not groups).
  std::vector<std::string> corpus_machine_names();

  Mealy corpus_machine(std::string_view name);

  FiniteGroupTable corpus_group(std::string_view name);

}  // namespace agt

#endif  // AGT_CORPUS_HPP_
