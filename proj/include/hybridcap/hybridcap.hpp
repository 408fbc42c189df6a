#pragma once

// Everything in one include.

#include "hybridcap/backhaul.hpp"
#include "hybridcap/channel.hpp"
#include "hybridcap/cutset.hpp"
#include "hybridcap/extended.hpp"
#include "hybridcap/finite_n.hpp"
#include "hybridcap/fit.hpp"
#include "hybridcap/parallel.hpp"
#include "hybridcap/regime.hpp"
#include "hybridcap/result_json.hpp"
#include "hybridcap/rng.hpp"
#include "hybridcap/scaling.hpp"
#include "hybridcap/schemes.hpp"
#include "hybridcap/sim_types.hpp"
#include "hybridcap/topology.hpp"
#include "hybridcap/topology_json.hpp"
