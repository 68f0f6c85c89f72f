#pragma once

#include "core.hpp"
#include "experiment.hpp"
#include "extremal.hpp"
#include "ilp.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "matching.hpp"
#include "random.hpp"
#include "solve.hpp"
#include "solvers.hpp"
#include "special.hpp"
#include "welfare.hpp"
