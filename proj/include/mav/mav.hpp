#pragma once

#include "mav/aux_lp.hpp"
#include "mav/aux_problem.hpp"
#include "mav/bit_vector.hpp"
#include "mav/budget.hpp"
#include "mav/combinatorics.hpp"
#include "mav/core.hpp"
#include "mav/election.hpp"
#include "mav/error.hpp"
#include "mav/io.hpp"
#include "mav/lp.hpp"
#include "mav/oracle.hpp"
#include "mav/ptas.hpp"
#include "mav/rng.hpp"
