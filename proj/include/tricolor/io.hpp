#pragma once

// Text instance format (one value per token, single spaces, '\n' line ends):
//   line 1: n
//   lines 2..k+1: n 0-based integers, the B-partners of A-vertices 0..n-1
// Matching JSON: {"edges":[[u,color],...],"counts":[c1,c2,c3]}

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tricolor/core.hpp"

namespace tricolor {

/// Parses any number of permutation lines; validation is left to the caller.
RawInstance parse_instance_text(std::istream& in);
RawInstance parse_instance_text(const std::string& text);

Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);

std::string format_instance(const Instance& inst);
std::string format_perms(int n, const std::vector<std::vector<int>>& perms);

nlohmann::ordered_json matching_to_json(const Matching& m);
Matching matching_from_json(const nlohmann::json& j);

/// Compact single-line JSON followed by '\n'.
std::string format_matching(const Matching& m);
Matching read_matching_file(const std::string& path);

}  // namespace tricolor
