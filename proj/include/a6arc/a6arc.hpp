#pragma once

// Umbrella header: the full orbit/arc/elimination toolkit.

#include "errors.hpp"
#include "factor.hpp"
#include "field.hpp"
#include "group.hpp"
#include "orbit.hpp"
#include "plane.hpp"
#include "poly.hpp"
#include "symcalc.hpp"
