#pragma once

#include "asymptotics.hpp"
#include "density_search.hpp"
#include "enumeration.hpp"
#include "gaussian.hpp"
#include "invariants.hpp"
#include "primality.hpp"
#include "region.hpp"
#include "ring.hpp"
#include "units.hpp"
