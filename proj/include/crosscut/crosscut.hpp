#pragma once

#include "crosscut/corner.hpp"
#include "crosscut/errors.hpp"
#include "crosscut/gcp.hpp"
#include "crosscut/harness.hpp"
#include "crosscut/instances.hpp"
#include "crosscut/lifting.hpp"
#include "crosscut/numeric.hpp"
#include "crosscut/reference.hpp"
#include "crosscut/rng.hpp"
#include "crosscut/simplex.hpp"
