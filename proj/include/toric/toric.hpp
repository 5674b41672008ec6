#ifndef TORIC_TORIC_HPP
#define TORIC_TORIC_HPP

#include "toric/rational.hpp"
#include "toric/linalg.hpp"
#include "toric/lp.hpp"
#include "toric/fan.hpp"
#include "toric/divisor.hpp"
#include "toric/polyhedra.hpp"
#include "toric/homology.hpp"
#include "toric/cohomology.hpp"
#include "toric/asymptotics.hpp"
#include "toric/gkz.hpp"
#include "toric/partials.hpp"

#endif
