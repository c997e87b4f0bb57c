#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sherman/convexity.hpp"

namespace sherman {

/// Derivatives available for every catalog function.
inline constexpr int kCatalogMaxOrder = 10;

/// Named functions for use from the command line:
///   square, cube, linear, negsquare, exp, xlogx, neglog, pow:<alpha>
/// xlogx, neglog and non-integer powers need an interval with lo > 0.
/// Throws DomainError(invalid_argument) for unknown names.
FunctionSpec make_function(std::string_view name, Interval interval);

std::vector<std::string> function_names();

}  // namespace sherman
