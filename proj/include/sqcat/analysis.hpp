#pragma once

// Phase-space and entanglement analysis.

#include "sqcat/entropy.hpp"
#include "sqcat/wigner.hpp"
