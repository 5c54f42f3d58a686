#include "agt/graph.hpp"

#include <deque>
#include <limits>

#include "agt/error.hpp"

namespace agt {

  namespace {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    std::string quoted(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }
  }  // namespace

  LabeledGraph::LabeledGraph(std::vector<std::string> labels)
      : _labels(std::move(labels)) {}

  std::size_t LabeledGraph::add_vertex(std::string name) {
    _vertices.push_back(std::move(name));
    _out.emplace_back(_labels.size(), none);
    return _vertices.size() - 1;
  }

  void LabeledGraph::add_edge(std::size_t src,
                              std::size_t label,
                              std::size_t dst) {
    if (src >= _vertices.size() || dst >= _vertices.size()
        || label >= _labels.size()) {
      throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
    }
    if (_out[src][label] != none) {
      throw Error(ErrorCode::invalid_argument,
                  "vertex " + _vertices[src] + " already has an edge labeled "
                      + _labels[label]);
    }
    _out[src][label] = dst;
    _edges.push_back({src, label, dst});
  }

  std::optional<std::size_t> LabeledGraph::target(std::size_t src,
                                                  std::size_t label) const {
    std::size_t t = _out.at(src).at(label);
    if (t == none) {
      return std::nullopt;
    }
    return t;
  }

  void LabeledGraph::set_root(std::size_t v) {
    if (v >= _vertices.size()) {
      throw Error(ErrorCode::invalid_argument, "root out of range");
    }
    _root = v;
  }

  std::string to_dot(LabeledGraph const& g) {
    std::string out = "digraph G {\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      out += "  " + std::to_string(v) + " [label=" + quoted(g.vertices()[v]);
      if (v == g.root()) {
        out += ", peripheries=2";
      }
      out += "];\n";
    }
    for (auto const& e : g.edges()) {
      out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst)
             + " [label=" + quoted(g.labels()[e.label]) + "];\n";
    }
    out += "}\n";
    return out;
  }

  std::string to_tsv(LabeledGraph const& g) {
    std::string out = "src\tlabel\tdst\n";
    for (auto const& e : g.edges()) {
      out += g.vertices()[e.src] + "\t" + g.labels()[e.label] + "\t"
             + g.vertices()[e.dst] + "\n";
    }
    return out;
  }

  bool rooted_isomorphic(LabeledGraph const&          g,
                         LabeledGraph const&          h,
                         std::span<std::size_t const> label_map) {
    if (g.num_vertices() != h.num_vertices()
        || g.edges().size() != h.edges().size()
        || g.labels().size() != h.labels().size()) {
      return false;
    }
    std::vector<std::size_t> lmap(g.labels().size(), none);
    if (label_map.empty()) {
      for (std::size_t i = 0; i < g.labels().size(); ++i) {
        for (std::size_t j = 0; j < h.labels().size(); ++j) {
          if (g.labels()[i] == h.labels()[j]) {
            lmap[i] = j;
          }
        }
        if (lmap[i] == none) {
          return false;
        }
      }
    } else {
      if (label_map.size() != g.labels().size()) {
        return false;
      }
      lmap.assign(label_map.begin(), label_map.end());
    }
    // Determinism makes the candidate bijection unique: follow edges from
    // the roots in lockstep.
    std::vector<std::size_t> fwd(g.num_vertices(), none);
    std::vector<std::size_t> bwd(h.num_vertices(), none);
    std::deque<std::size_t>  queue;
    fwd[g.root()] = h.root();
    bwd[h.root()] = g.root();
    queue.push_back(g.root());
    std::size_t matched = 1;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t l = 0; l < g.labels().size(); ++l) {
        auto tg = g.target(v, l);
        auto th = h.target(fwd[v], lmap[l]);
        if (tg.has_value() != th.has_value()) {
          return false;
        }
        if (!tg) {
          continue;
        }
        if (fwd[*tg] == none && bwd[*th] == none) {
          fwd[*tg] = *th;
          bwd[*th] = *tg;
          ++matched;
          queue.push_back(*tg);
        } else if (fwd[*tg] != *th || bwd[*th] != *tg) {
          return false;
        }
      }
    }
    return matched == g.num_vertices();
  }

}  // namespace agt
