#pragma once

#include "mft/model.hpp"
#include "mft/params.hpp"
#include "mft/presets.hpp"
#include "mft/simulate.hpp"
#include "mft/solvers.hpp"
#include "mft/svg.hpp"
#include "mft/sweep.hpp"
