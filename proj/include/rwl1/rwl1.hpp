#pragma once

// Umbrella header for the weighted-l1 recovery laboratory.

#include "rwl1/analysis/order_statistics.hpp"
#include "rwl1/analysis/robustness.hpp"
#include "rwl1/analysis/subset_mass.hpp"
#include "rwl1/analysis/weak_robustness.hpp"
#include "rwl1/core/dense_matrix.hpp"
#include "rwl1/core/linalg.hpp"
#include "rwl1/core/parallel.hpp"
#include "rwl1/core/quadrature.hpp"
#include "rwl1/core/random_stream.hpp"
#include "rwl1/core/root_finding.hpp"
#include "rwl1/core/special_functions.hpp"
#include "rwl1/experiment/config.hpp"
#include "rwl1/experiment/engine.hpp"
#include "rwl1/experiment/io.hpp"
#include "rwl1/recovery/two_step.hpp"
#include "rwl1/signal/distribution.hpp"
#include "rwl1/signal/sparse_signal.hpp"
#include "rwl1/solver/basis_pursuit.hpp"
#include "rwl1/solver/brute_force.hpp"
#include "rwl1/solver/support.hpp"
#include "rwl1/thresholds/face_exponents.hpp"
#include "rwl1/thresholds/thresholds.hpp"
#include "rwl1/version.hpp"
