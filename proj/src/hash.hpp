#ifndef AGT_SRC_HASH_HPP_
#define AGT_SRC_HASH_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace agt::detail {

  struct VectorHash {
    template <typename T>
    std::size_t operator()(std::vector<T> const& v) const noexcept {
      std::uint64_t h = 0xcbf29ce484222325ULL ^ v.size();
      for (auto x : v) {
        h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6)
             + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

}  // namespace agt::detail

#endif  // AGT_SRC_HASH_HPP_
