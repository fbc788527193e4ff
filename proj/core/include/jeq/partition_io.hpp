#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jeq/partition.hpp"

namespace jeq {

/// Text form: "n=<int> w=3" on line 1, then one line of C(n,3) labels over {1,2}
/// indexed by colex rank. Further label lines are additional partitions of the
/// same n.
std::string to_text(const TwoPartition& p);
std::string to_text(const std::vector<TwoPartition>& ps);

/// {"n":12,"cells":{"1":[[1,2,3],...],"2":[...]}}
std::string to_json(const TwoPartition& p);

/// Parses either form (JSON when the first non-blank character is '{').
/// Throws ParseError with a 1-based line/column on malformed input, and
/// DomainError for well-formed input that is not a valid 2-partition.
TwoPartition parse_partition(std::string_view text);
std::vector<TwoPartition> parse_partitions(std::string_view text);

TwoPartition read_partition_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace jeq
