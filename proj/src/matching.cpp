#include "constel/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace constel {

std::vector<Label> common_labels(const Constellation& a, const Constellation& b) {
  std::set<Label> in_a;
  for (const auto& object : a.objects) in_a.insert(object.label);
  std::set<Label> in_b;
  for (const auto& object : b.objects) in_b.insert(object.label);
  std::vector<Label> common;
  std::set_intersection(in_a.begin(), in_a.end(), in_b.begin(), in_b.end(),
                        std::back_inserter(common));
  return common;
}

namespace {

// Per-label object indices plus, per object, the compact surroundings row:
// distances to the nearest instance of each common label, in `common` order.
struct Surroundings {
  std::vector<std::vector<std::size_t>> instances;  // per common label, ascending
  std::vector<std::vector<double>> rows;            // per object, size |common|
};

Surroundings compute_surroundings(const Constellation& c, const std::vector<Label>& common) {
  Surroundings s;
  s.instances.resize(common.size());
  for (std::size_t i = 0; i < c.objects.size(); ++i) {
    const auto it = std::lower_bound(common.begin(), common.end(), c.objects[i].label);
    if (it != common.end() && *it == c.objects[i].label) {
      s.instances[static_cast<std::size_t>(it - common.begin())].push_back(i);
    }
  }
  s.rows.assign(c.objects.size(), std::vector<double>(common.size(), 0.0));
  for (std::size_t k = 0; k < c.objects.size(); ++k) {
    for (std::size_t ci = 0; ci < common.size(); ++ci) {
      double best = 0.0;
      bool found = false;
      for (const std::size_t n : s.instances[ci]) {
        const double dist = (c.objects[k].position - c.objects[n].position).norm();
        if (!found || dist < best) {
          best = dist;
          found = true;
        }
      }
      s.rows[k][ci] = found ? best : 0.0;  // no instance of a common label: 0
    }
  }
  return s;
}

double row_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

Eigen::VectorXd surroundings_vector(const Constellation& c, std::size_t object_index,
                                    const std::vector<Label>& common, std::size_t num_labels) {
  if (object_index >= c.objects.size()) {
    throw std::out_of_range("surroundings_vector: object index out of range");
  }
  for (const Label l : common) {
    if (l >= num_labels) throw std::invalid_argument("surroundings_vector: label outside universe");
  }
  const Surroundings s = compute_surroundings(c, common);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_labels));
  for (std::size_t ci = 0; ci < common.size(); ++ci) {
    v[static_cast<Eigen::Index>(common[ci])] = s.rows[object_index][ci];
  }
  return v;
}

MatchSet associate(const Constellation& a, const Constellation& b, double match_distance) {
  if (!(match_distance > 0.0)) {
    throw std::invalid_argument("associate: match distance must be positive");
  }
  MatchSet out;
  out.threshold_used = match_distance;
  const std::vector<Label> common = common_labels(a, b);
  if (common.empty()) return out;

  const Surroundings sa = compute_surroundings(a, common);
  const Surroundings sb = compute_surroundings(b, common);

  for (std::size_t ci = 0; ci < common.size(); ++ci) {
    const auto& idx_a = sa.instances[ci];
    const auto& idx_b = sb.instances[ci];
    // Pairwise vector distances for this label block.
    std::vector<std::vector<double>> dist(idx_a.size(), std::vector<double>(idx_b.size()));
    for (std::size_t ia = 0; ia < idx_a.size(); ++ia) {
      for (std::size_t ib = 0; ib < idx_b.size(); ++ib) {
        dist[ia][ib] = row_distance(sa.rows[idx_a[ia]], sb.rows[idx_b[ib]]);
      }
    }
    const auto argmin_row = [&](std::size_t ia) {
      std::size_t best = 0;
      for (std::size_t ib = 1; ib < idx_b.size(); ++ib) {
        if (dist[ia][ib] < dist[ia][best]) best = ib;  // ties keep the lowest index
      }
      return best;
    };
    const auto argmin_col = [&](std::size_t ib) {
      std::size_t best = 0;
      for (std::size_t ia = 1; ia < idx_a.size(); ++ia) {
        if (dist[ia][ib] < dist[best][ib]) best = ia;
      }
      return best;
    };
    for (std::size_t ia = 0; ia < idx_a.size(); ++ia) {
      const std::size_t ib = argmin_row(ia);
      if (argmin_col(ib) == ia && dist[ia][ib] < match_distance) {
        out.pairs.emplace_back(idx_a[ia], idx_b[ib]);
      }
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

PairScore pair_score(const Constellation& a, const Constellation& b, double match_distance) {
  const SemanticDescriptor da = build_semantic_descriptor(a);
  const SemanticDescriptor db = build_semantic_descriptor(b);
  PairScore result;
  result.semantic = jaccard(da, db);
  const std::uint64_t common_objects = intersection_count(da, db);
  if (common_objects > 0) {
    const std::size_t matched = associate(a, b, match_distance).pairs.size();
    result.geometric = static_cast<double>(matched) / static_cast<double>(common_objects);
  }
  result.score = result.semantic * result.geometric;
  return result;
}

}  // namespace constel
