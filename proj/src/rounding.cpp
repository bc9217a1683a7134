#include "groupdesign/rounding.hpp"

#include <cmath>
#include <numeric>

#include "groupdesign/errors.hpp"

namespace groupdesign {

Apportionment efficient_round(const std::vector<double>& weights, std::int64_t n) {
  const std::int64_t m = static_cast<std::int64_t>(weights.size());
  if (m == 0) throw DomainError("efficient_round: no weights");
  for (double w : weights)
    if (!(w > 0.0)) throw DomainError("efficient_round: weights must be positive");
  if (n < m)
    throw InfeasibleError("efficient_round: sample size smaller than the support size");

  Apportionment ap;
  ap.total = n;
  ap.counts.resize(m);
  for (std::int64_t i = 0; i < m; ++i)
    ap.counts[i] = static_cast<std::int64_t>(
        std::ceil((static_cast<double>(n) - 0.5 * static_cast<double>(m)) * weights[i]));

  std::int64_t sum = std::accumulate(ap.counts.begin(), ap.counts.end(), std::int64_t{0});
  while (sum < n) {
    std::int64_t best = 0;
    double best_ratio = static_cast<double>(ap.counts[0]) / weights[0];
    for (std::int64_t i = 1; i < m; ++i) {
      const double r = static_cast<double>(ap.counts[i]) / weights[i];
      if (r < best_ratio) {
        best_ratio = r;
        best = i;
      }
    }
    ++ap.counts[best];
    ++sum;
  }
  while (sum > n) {
    std::int64_t best = 0;
    double best_ratio = static_cast<double>(ap.counts[0] - 1) / weights[0];
    for (std::int64_t i = 1; i < m; ++i) {
      const double r = static_cast<double>(ap.counts[i] - 1) / weights[i];
      if (r > best_ratio) {
        best_ratio = r;
        best = i;
      }
    }
    --ap.counts[best];
    --sum;
  }
  return ap;
}

Design round_design(const Design& d, std::int64_t n) {
  const Apportionment ap = efficient_round(d.weights(), n);
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    w[i] = static_cast<double>(ap.counts[i]) / static_cast<double>(n);
  return Design(d.manifold(), d.points(), std::move(w));
}

}  // namespace groupdesign
