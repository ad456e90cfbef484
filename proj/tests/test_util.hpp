#pragma once

#include <vector>

#include "oracle.hpp"
#include "schurkit/partition.hpp"

namespace testutil {

inline oracle::seq to_seq(const schurkit::partition& p) { return {p.parts().begin(), p.parts().end()}; }

inline schurkit::partition from_seq(const oracle::seq& s) {
  return schurkit::partition(std::vector<schurkit::part_t>(s.begin(), s.end()));
}

/// Every partition with weight <= max_weight and at most max_len rows.
inline std::vector<schurkit::partition> all_partitions(schurkit::part_t max_weight, std::size_t max_len) {
  std::vector<schurkit::partition> out;
  for (schurkit::part_t w = 0; w <= max_weight; ++w)
    schurkit::for_each_partition(w, max_len, [&](const schurkit::partition& p) { out.push_back(p); });
  return out;
}

}  // namespace testutil
