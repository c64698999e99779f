#pragma once

#include <string>

#include "cosfunk/harmonics.hpp"

namespace cosfunk::cli {

/// Test-function mini-language:
///   zonal:j=<j>,pole=<x,y,z,...>   Z_j(pole . v), pole normalized
///   const:<c>                      constant c
///   random-even:J=<J>,seed=<s>     random even band-limited function
/// Malformed specs raise InvalidArgument.
HarmonicSpectrum parse_function_spec(const std::string& spec, int n);

}  // namespace cosfunk::cli
