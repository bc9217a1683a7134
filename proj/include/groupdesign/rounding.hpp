#pragma once

#include <cstdint>
#include <vector>

#include "groupdesign/design.hpp"

namespace groupdesign {

// Integer replication counts per support point, summing to the sample
// size n; every retained point keeps at least one observation.
struct Apportionment {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

// Efficient design apportionment: start from ceil((n - m/2) w_i), then
// move single observations toward the index minimizing n_i / w_i (resp.
// away from the index maximizing (n_i - 1) / w_i) until the counts sum to
// n. Ties break toward the lowest index, which makes the result
// deterministic. Requires n >= m.
Apportionment efficient_round(const std::vector<double>& weights, std::int64_t n);

// Applies efficient_round to a weighted design and returns the exact
// design with weights n_i / n on the same support.
Design round_design(const Design& d, std::int64_t n);

}  // namespace groupdesign
