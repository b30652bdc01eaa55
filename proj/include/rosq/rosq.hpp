#pragma once

#include "rosq/cache.hpp"
#include "rosq/chart.hpp"
#include "rosq/coefficients.hpp"
#include "rosq/descriptor.hpp"
#include "rosq/detection.hpp"
#include "rosq/engine.hpp"
#include "rosq/error.hpp"
#include "rosq/grading.hpp"
#include "rosq/homotopy.hpp"
#include "rosq/lattice.hpp"
#include "rosq/monomial_ideal.hpp"
#include "rosq/oracle.hpp"
#include "rosq/zmod.hpp"
