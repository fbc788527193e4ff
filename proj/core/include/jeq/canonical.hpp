#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jeq/partition.hpp"

namespace jeq {

/// Lexicographically least cell-label string ('1' < '2') over the Sym(n)-orbit of
/// p, each image taken in canonical orientation. Equal for two partitions iff
/// they are isomorphic under a relabelling of the ground set.
std::string canonical_form(const TwoPartition& p);

/// Classes of elements x ~ y for which the transposition (x y) fixes p.
std::vector<std::vector<int>> twin_classes(const TwoPartition& p);

}  // namespace jeq
