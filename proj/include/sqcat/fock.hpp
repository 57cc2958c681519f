#pragma once

// Truncated Fock-space core: layouts, states, operators, measurements.

#include "sqcat/errors.hpp"
#include "sqcat/fock_vector.hpp"
#include "sqcat/measurement.hpp"
#include "sqcat/mode_layout.hpp"
#include "sqcat/operators.hpp"
#include "sqcat/states.hpp"
