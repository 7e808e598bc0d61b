#pragma once

// Convenience include of the whole library.

#include "rotspin/vec3.hpp"
#include "rotspin/pauli.hpp"
#include "rotspin/units.hpp"
#include "rotspin/model.hpp"
#include "rotspin/berry.hpp"
#include "rotspin/kinematics.hpp"
#include "rotspin/transport.hpp"
#include "rotspin/quadrature.hpp"
#include "rotspin/integrands.hpp"
#include "rotspin/densities.hpp"
#include "rotspin/validate.hpp"
#include "rotspin/config.hpp"
#include "rotspin/sweep.hpp"
#include "rotspin/report.hpp"
