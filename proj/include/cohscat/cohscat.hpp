// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cohscat/born.hpp"
#include "cohscat/coherence.hpp"
#include "cohscat/csv.hpp"
#include "cohscat/delta1d.hpp"
#include "cohscat/error.hpp"
#include "cohscat/kinematics.hpp"
#include "cohscat/potential.hpp"
#include "cohscat/quadrature.hpp"
#include "cohscat/rutherford.hpp"
#include "cohscat/sampler.hpp"
#include "cohscat/units.hpp"
