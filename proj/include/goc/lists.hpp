#pragma once

#include <string>
#include <vector>

#include "goc/environment.hpp"

namespace goc {

/// Parses a list of reals for command-line flags. Items are separated by
/// commas; an item may be a range `lo:step:hi` (inclusive), and a literal
/// `...` continues the arithmetic progression of the two preceding items up
/// to the next one, as in `2,2.5,...,6`. Throws std::invalid_argument.
std::vector<double> parse_real_list(const std::string& text);

/// Parses an adversary mixture `z=2.0:0.5,z=3.0:0.5` (offset:weight). A bare
/// `z=2.0` means weight 1.
MixtureAdversary parse_mixture(const std::string& text);

}  // namespace goc
