#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jeq/construct.hpp"
#include "jeq/partition.hpp"

namespace jeq {

struct RecognitionResult {
    std::optional<Family> family;  // nullopt = unknown
    std::optional<DependenceSignature> structure;
    bool certified = false;

    std::string family_name() const { return family ? to_string(*family) : "Unknown"; }
};

/// Families whose canonical matrix at m = n/2 equals q. Empty for the symmetric
/// matrix, for odd n, and for anything that is not an integral equitable 2x2 matrix.
/// Two families can share a matrix in canonical orientation (Π2 and Π3 at n = 8).
std::vector<Family> quotient_family(const QuotientMatrix& q, int n);

/// Recovers the construction behind p and certifies it by regenerating p exactly.
/// DomainError unless p is equitable with θ = n - 7. Odd n gives Unknown.
RecognitionResult recognize(const TwoPartition& p);

}  // namespace jeq
