// Convenience umbrella header.
#pragma once

#include "casimir_spin/constants.hpp"
#include "casimir_spin/dipole.hpp"
#include "casimir_spin/ellipsoid.hpp"
#include "casimir_spin/errors.hpp"
#include "casimir_spin/oracle.hpp"
#include "casimir_spin/polarizability.hpp"
#include "casimir_spin/quadrature.hpp"
#include "casimir_spin/rng.hpp"
#include "casimir_spin/rotating.hpp"
#include "casimir_spin/stress_oracle.hpp"
#include "casimir_spin/vacuum.hpp"
