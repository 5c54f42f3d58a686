#include "agt/corpus.hpp"

#include "agt/error.hpp"

namespace agt {

  namespace detail {
    extern std::vector<CorpusEntry> const corpus_entries;
  }

  std::vector<CorpusEntry> const& corpus() {
    return detail::corpus_entries;
  }

  CorpusEntry const& corpus_entry(std::string_view name) {
    for (auto const& entry : detail::corpus_entries) {
      if (entry.name == name) {
        return entry;
      }
    }
    throw Error(ErrorCode::unknown_identifier,
                "no corpus entry named '" + std::string(name) + "'");
  }

  std::vector<std::string> corpus_machine_names() {
    std::vector<std::string> names;
    for (auto const& entry : detail::corpus_entries) {
      if (entry.kind == "mealy") {
        names.emplace_back(entry.name);
      }
    }
    return names;
  }

  Mealy corpus_machine(std::string_view name) {
    auto const& entry = corpus_entry(name);
    if (entry.kind != "mealy") {
      throw Error(ErrorCode::invalid_argument,
                  "corpus entry '" + std::string(name) + "' is not a machine");
    }
    return parse_machine(entry.text);
  }

  FiniteGroupTable corpus_group(std::string_view name) {
    auto const& entry = corpus_entry(name);
    if (entry.kind != "group") {
      throw Error(ErrorCode::invalid_argument,
                  "corpus entry '" + std::string(name) + "' is not a group");
    }
    return group_from_table(entry.text);
  }

}  // namespace agt
