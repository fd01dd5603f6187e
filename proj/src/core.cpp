#include "constel/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace constel {

std::uint64_t SemanticDescriptor::total() const {
  std::uint64_t sum = 0;
  for (const auto& [label, count] : counts) sum += count;
  return sum;
}

std::uint32_t SemanticDescriptor::at(Label label) const {
  const auto it = counts.find(label);
  return it == counts.end() ? 0u : it->second;
}

SemanticDescriptor build_semantic_descriptor(const Constellation& c) {
  SemanticDescriptor d;
  for (const auto& object : c.objects) ++d.counts[object.label];
  return d;
}

namespace {

struct MinMaxSums {
  std::uint64_t min_sum = 0;
  std::uint64_t max_sum = 0;
};

// Merge-walk both sorted maps; labels missing on one side count as 0.
// `restrict_to` of nullptr means the full universe.
MinMaxSums min_max_sums(const SemanticDescriptor& a, const SemanticDescriptor& b,
                        const LabelRange* restrict_to) {
  MinMaxSums sums;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  const auto in_range = [&](Label l) { return restrict_to == nullptr || restrict_to->contains(l); };
  while (ia != a.counts.end() || ib != b.counts.end()) {
    Label label;
    std::uint32_t ca = 0;
    std::uint32_t cb = 0;
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      label = ia->first;
      ca = ia->second;
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      label = ib->first;
      cb = ib->second;
      ++ib;
    } else {
      label = ia->first;
      ca = ia->second;
      cb = ib->second;
      ++ia;
      ++ib;
    }
    if (!in_range(label)) continue;
    sums.min_sum += std::min(ca, cb);
    sums.max_sum += std::max(ca, cb);
  }
  return sums;
}

double jaccard_from_sums(MinMaxSums sums) {
  if (sums.max_sum == 0) return 0.0;
  return static_cast<double>(sums.min_sum) / static_cast<double>(sums.max_sum);
}

}  // namespace

double jaccard(const SemanticDescriptor& a, const SemanticDescriptor& b) {
  return jaccard_from_sums(min_max_sums(a, b, nullptr));
}

double jaccard(const SemanticDescriptor& a, const SemanticDescriptor& b, LabelRange labels) {
  return jaccard_from_sums(min_max_sums(a, b, &labels));
}

std::uint64_t intersection_count(const SemanticDescriptor& a, const SemanticDescriptor& b) {
  return min_max_sums(a, b, nullptr).min_sum;
}

bool neighbor_excluded(FrameId a, FrameId b, std::uint32_t exclusion_frames) {
  if (a.robot != b.robot) return false;
  const std::int64_t diff = static_cast<std::int64_t>(a.frame) - static_cast<std::int64_t>(b.frame);
  return std::llabs(diff) < static_cast<std::int64_t>(exclusion_frames);
}

}  // namespace constel
