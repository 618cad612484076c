#pragma once

#include <string>

#include "magicbc/qstate.hpp"

namespace magicbc {

/// Parses a state description:
///   named:      T, Tperp, H, zero|0, one|1, plus|+, minus|-, plus_i|+i, minus_i|-i
///   angles:     theta,zeta[,basis=T|computational]   (default basis T)
///   amplitudes: amp:re,im;re,im[;...]                 (normalized on read)
/// Throws Error(InvalidSpec) on anything else.
PureState parse_state_spec(const std::string& spec);

}  // namespace magicbc
