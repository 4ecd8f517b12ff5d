#pragma once

#include "shosim/capacity.hpp"
#include "shosim/channel.hpp"
#include "shosim/config.hpp"
#include "shosim/csv.hpp"
#include "shosim/experiments.hpp"
#include "shosim/format.hpp"
#include "shosim/geometry.hpp"
#include "shosim/handover.hpp"
#include "shosim/montecarlo.hpp"
#include "shosim/power_control.hpp"
#include "shosim/random.hpp"
