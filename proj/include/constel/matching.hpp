#pragma once
#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "constel/core.hpp"

namespace constel {

/// One-to-one object matches between two constellations. Pairs are
/// (object index in a, object index in b); matched objects always share a
/// label, and each index appears at most once.
struct MatchSet {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double threshold_used = 0.0;
};

/// Loop-closure score of a constellation pair: semantic part (Jaccard of the
/// full descriptors), geometric part (fraction of common objects matched),
/// and their product.
struct PairScore {
  double semantic = 0.0;
  double geometric = 0.0;
  double score = 0.0;
};

/// Labels with at least one instance in both constellations, ascending.
std::vector<Label> common_labels(const Constellation& a, const Constellation& b);

/// Geometric surroundings descriptor of object `object_index`: a dense
/// vector of length `num_labels` whose entry at label l is the distance to
/// the nearest instance of l within the same constellation (the object
/// itself included, so the entry at its own label is 0), restricted to the
/// labels in `common`; entries elsewhere are exactly 0.0. A label in
/// `common` with no instance in `c` also yields 0.0.
Eigen::VectorXd surroundings_vector(const Constellation& c, std::size_t object_index,
                                    const std::vector<Label>& common, std::size_t num_labels);

/// Mutual-nearest-neighbor data association on surroundings vectors.
/// A pair (k, n) is kept iff n minimizes the vector distance from k among
/// same-label objects of b, k minimizes symmetrically, and the distance is
/// strictly below `match_distance`. Ties pick the lowest object index.
MatchSet associate(const Constellation& a, const Constellation& b, double match_distance);

PairScore pair_score(const Constellation& a, const Constellation& b, double match_distance);

}  // namespace constel
