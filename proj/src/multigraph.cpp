#include "mkit/multigraph.hpp"

#include <string>

#include "mkit/errors.hpp"

namespace mkit {

void Multigraph::validate() const {
  if (vertex_count < 0) throw DomainError("vertex count must be non-negative");
  if (edges.size() > 64) throw DomainError("multigraph exceeds 64 edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
      throw DomainError("edge " + std::to_string(i) + " has an endpoint outside 0.." +
                        std::to_string(vertex_count - 1));
  }
}

std::vector<int> Multigraph::spanned_vertices(Mask s) const {
  std::vector<char> hit(vertex_count, 0);
  for_each_element(s, [&](int i) {
    hit[edges[i].first] = 1;
    hit[edges[i].second] = 1;
  });
  std::vector<int> out;
  for (int v = 0; v < vertex_count; ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

int Multigraph::spanned_count(Mask s) const {
  return static_cast<int>(spanned_vertices(s).size());
}

}  // namespace mkit
