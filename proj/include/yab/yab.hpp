#pragma once

#include "yab/error.hpp"
#include "yab/format.hpp"
#include "yab/grid_metrics.hpp"
#include "yab/harmonic_solver.hpp"
#include "yab/loss_map.hpp"
#include "yab/modulation.hpp"
#include "yab/parallel.hpp"
#include "yab/params.hpp"
#include "yab/report.hpp"
#include "yab/td_oracle.hpp"
#include "yab/waveforms.hpp"
