#ifndef AGT_GRAPH_HPP_
#define AGT_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agt {

  //! Rooted, edge-labeled, deterministic digraph.
  class LabeledGraph {
   public:
    struct Edge {
      std::size_t src;
      std::size_t label;
      std::size_t dst;

      bool operator==(Edge const&) const = default;
    };

    explicit LabeledGraph(std::vector<std::string> labels = {});

    std::size_t add_vertex(std::string name);

    //! Throws invalid_argument if (src, label) already has an out-edge.
    void add_edge(std::size_t src, std::size_t label, std::size_t dst);

    std::optional<std::size_t> target(std::size_t src,
                                      std::size_t label) const;

    std::vector<std::string> const& vertices() const noexcept {
      return _vertices;
    }

    std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }

    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    std::size_t num_vertices() const noexcept {
      return _vertices.size();
    }

    std::size_t root() const noexcept {
      return _root;
    }

    void set_root(std::size_t v);

   private:
    std::vector<std::string>              _vertices;
    std::vector<std::string>              _labels;
    std::vector<Edge>                     _edges;
    std::vector<std::vector<std::size_t>> _out;  // per vertex, per label
    std::size_t                           _root = 0;
  };

  //! DOT: vertices labeled by name, root drawn with peripheries=2.
  std::string to_dot(LabeledGraph const& g);

  //! TSV lines `src<TAB>label<TAB>dst` using vertex names, after a header.
  std::string to_tsv(LabeledGraph const& g);

  //! Rooted isomorphism respecting labels. `label_map[i]` is the label of h
  //! matching label i of g; by default labels are matched by name.
  bool rooted_isomorphic(LabeledGraph const&          g,
                         LabeledGraph const&          h,
                         std::span<std::size_t const> label_map = {});

}  // namespace agt

#endif  // AGT_GRAPH_HPP_
