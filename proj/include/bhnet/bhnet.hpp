#pragma once

#include "bhnet/link_model.hpp"
#include "bhnet/power_energy.hpp"
#include "bhnet/scenario.hpp"
#include "bhnet/sweep.hpp"
#include "bhnet/topology.hpp"
#include "bhnet/traffic.hpp"
