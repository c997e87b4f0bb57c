#pragma once

#include "sherman/bounds.hpp"
#include "sherman/convexity.hpp"
#include "sherman/divergence.hpp"
#include "sherman/errors.hpp"
#include "sherman/fink.hpp"
#include "sherman/function_catalog.hpp"
#include "sherman/majorization.hpp"
#include "sherman/quadrature.hpp"
