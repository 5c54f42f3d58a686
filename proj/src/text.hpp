#ifndef AGT_SRC_TEXT_HPP_
#define AGT_SRC_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace agt::detail {

  // Split on runs of spaces and tabs.
  inline std::vector<std::string> tokens(std::string_view s) {
    std::vector<std::string> result;
    std::size_t              i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
        ++i;
      }
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
        ++j;
      }
      if (j > i) {
        result.emplace_back(s.substr(i, j - i));
      }
      i = j;
    }
    return result;
  }

  struct Line {
    std::size_t              number;
    std::vector<std::string> tokens;
  };

  // Non-blank lines with comments and CR stripped.
  inline std::vector<Line> logical_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t       number = 0, pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      ++number;
      std::string_view line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      auto tok = tokens(line);
      if (!tok.empty()) {
        lines.push_back({number, std::move(tok)});
      }
      pos = end + 1;
    }
    return lines;
  }

}  // namespace agt::detail

#endif  // AGT_SRC_TEXT_HPP_
