#include "entre/baselines.hpp"

namespace entre {

void ospf_assign(Scenario& sc) {
  for (IePair& pr : sc.pairs) {
    std::size_t best = pr.paths.size();
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi) {
      if (pr.splits.excluded[pi]) continue;
      if (best == pr.paths.size() ||
          pr.paths[pi].links.size() < pr.paths[best].links.size())
        best = pi;
    }
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi)
      pr.splits.x[pi] = (pi == best) ? 1.0 : 0.0;
  }
}

void equal_split_assign(Scenario& sc) {
  for (IePair& pr : sc.pairs) {
    int n = pr.splits.active_count();
    for (std::size_t pi = 0; pi < pr.paths.size(); ++pi)
      pr.splits.x[pi] = pr.splits.excluded[pi] ? 0.0 : 1.0 / n;
  }
}

}  // namespace entre
