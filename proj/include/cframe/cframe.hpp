#pragma once

// Convenience umbrella for the whole library.
#include "cframe/controlled.hpp"
#include "cframe/eigen.hpp"
#include "cframe/errors.hpp"
#include "cframe/expr.hpp"
#include "cframe/frame.hpp"
#include "cframe/framespec.hpp"
#include "cframe/matrix.hpp"
#include "cframe/measure.hpp"
#include "cframe/scalar.hpp"
#include "cframe/tolerances.hpp"
#include "cframe/verify.hpp"
