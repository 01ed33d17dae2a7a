#pragma once

#include "hirelab/error.hpp"
#include "hirelab/random.hpp"
#include "hirelab/rational.hpp"
#include "hirelab/score_dist.hpp"
#include "hirelab/strategy.hpp"
#include "hirelab/gaps.hpp"
#include "hirelab/stats.hpp"
#include "hirelab/parallel.hpp"
#include "hirelab/sim.hpp"
#include "hirelab/piecewise.hpp"
#include "hirelab/epoly.hpp"
#include "hirelab/exact.hpp"
#include "hirelab/symbolic.hpp"
#include "hirelab/report.hpp"
