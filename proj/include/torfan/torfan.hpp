#pragma once

#include "torfan/arrangement.hpp"
#include "torfan/betti.hpp"
#include "torfan/fan.hpp"
#include "torfan/feasibility.hpp"
#include "torfan/io.hpp"
#include "torfan/lattice.hpp"
#include "torfan/numeric.hpp"
#include "torfan/strata.hpp"
#include "torfan/subdiv.hpp"
#include "torfan/verify.hpp"
#include "torfan/wonderful.hpp"
