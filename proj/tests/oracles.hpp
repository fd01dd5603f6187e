// Brute-force reference implementations, independent of the library's
// internals: dense per-label vectors and explicit argmin scans over all
// candidate pairs. Test-only.
#pragma once
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "constel/core.hpp"
#include "constel/protocol.hpp"

namespace constel::testing {

inline double brute_force_jaccard(const SemanticDescriptor& a, const SemanticDescriptor& b,
                                  std::size_t num_labels) {
  std::uint64_t min_sum = 0;
  std::uint64_t max_sum = 0;
  for (std::size_t l = 0; l < num_labels; ++l) {
    const std::uint32_t ca = a.at(static_cast<Label>(l));
    const std::uint32_t cb = b.at(static_cast<Label>(l));
    min_sum += std::min(ca, cb);
    max_sum += std::max(ca, cb);
  }
  if (max_sum == 0) return 0.0;
  return static_cast<double>(min_sum) / static_cast<double>(max_sum);
}

// Dense surroundings vector of one object over the full universe.
inline std::vector<double> brute_force_surroundings(const Constellation& c, std::size_t k,
                                                    const std::set<Label>& common,
                                                    std::size_t num_labels) {
  std::vector<double> v(num_labels, 0.0);
  for (const Label l : common) {
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t n = 0; n < c.objects.size(); ++n) {
      if (c.objects[n].label != l) continue;
      const double dist = (c.objects[k].position - c.objects[n].position).norm();
      if (dist < best) best = dist;
      found = true;
    }
    v[l] = found ? best : 0.0;
  }
  return v;
}

// Mutual-nearest association by scanning every candidate pair.
inline std::vector<std::pair<std::size_t, std::size_t>> brute_force_associate(
    const Constellation& a, const Constellation& b, double match_distance,
    std::size_t num_labels) {
  std::set<Label> in_a;
  for (const auto& object : a.objects) in_a.insert(object.label);
  std::set<Label> common;
  for (const auto& object : b.objects) {
    if (in_a.count(object.label)) common.insert(object.label);
  }

  std::vector<std::vector<double>> va(a.objects.size());
  for (std::size_t k = 0; k < a.objects.size(); ++k) {
    va[k] = brute_force_surroundings(a, k, common, num_labels);
  }
  std::vector<std::vector<double>> vb(b.objects.size());
  for (std::size_t n = 0; n < b.objects.size(); ++n) {
    vb[n] = brute_force_surroundings(b, n, common, num_labels);
  }

  const auto vector_distance = [&](std::size_t k, std::size_t n) {
    double sum = 0.0;
    for (std::size_t l = 0; l < num_labels; ++l) {
      const double d = va[k][l] - vb[n][l];
      sum += d * d;
    }
    return std::sqrt(sum);
  };

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> best_in_b(a.objects.size(), kNone);
  for (std::size_t k = 0; k < a.objects.size(); ++k) {
    for (std::size_t n = 0; n < b.objects.size(); ++n) {
      if (b.objects[n].label != a.objects[k].label) continue;
      if (best_in_b[k] == kNone || vector_distance(k, n) < vector_distance(k, best_in_b[k])) {
        best_in_b[k] = n;
      }
    }
  }
  std::vector<std::size_t> best_in_a(b.objects.size(), kNone);
  for (std::size_t n = 0; n < b.objects.size(); ++n) {
    for (std::size_t k = 0; k < a.objects.size(); ++k) {
      if (a.objects[k].label != b.objects[n].label) continue;
      if (best_in_a[n] == kNone || vector_distance(k, n) < vector_distance(best_in_a[n], n)) {
        best_in_a[n] = k;
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> matches;
  for (std::size_t k = 0; k < a.objects.size(); ++k) {
    const std::size_t n = best_in_b[k];
    if (n == kNone) continue;
    if (best_in_a[n] == k && vector_distance(k, n) < match_distance) matches.emplace_back(k, n);
  }
  return matches;
}

// Exhaustive top-k scan of a partial store, mirroring the response contract.
inline std::vector<FrameId> brute_force_candidates(const PartialStore& store,
                                                   const SemanticDescriptor& query,
                                                   FrameId query_origin, std::size_t max_candidates,
                                                   std::uint32_t neighbor_exclusion,
                                                   std::size_t num_labels) {
  struct Scored {
    double score;
    std::size_t arrival;
    FrameId origin;
  };
  std::vector<Scored> scored;
  for (std::size_t i = 0; i < store.entries.size(); ++i) {
    if (neighbor_excluded(store.entries[i].origin, query_origin, neighbor_exclusion)) continue;
    const double s = brute_force_jaccard(query, store.entries[i].partial, num_labels);
    if (s > 0.0) scored.push_back({s, i, store.entries[i].origin});
  }
  std::vector<FrameId> out;
  while (out.size() < max_candidates) {
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < scored.size(); ++i) {
      if (scored[i].arrival == static_cast<std::size_t>(-2)) continue;
      if (best == static_cast<std::size_t>(-1) || scored[i].score > scored[best].score) best = i;
    }
    if (best == static_cast<std::size_t>(-1)) break;
    out.push_back(scored[best].origin);
    scored[best].arrival = static_cast<std::size_t>(-2);
  }
  return out;
}

}  // namespace constel::testing
