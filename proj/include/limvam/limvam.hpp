#pragma once

// Multi-view linear causal discovery: pairwise second-order criteria,
// recursive-residuals ordering, one-step FGLS coefficients, a second-order
// shared-ICA estimator, synthetic generators, metrics, and IO.

#include "limvam/assignment.hpp"
#include "limvam/bench.hpp"
#include "limvam/core.hpp"
#include "limvam/criteria.hpp"
#include "limvam/errors.hpp"
#include "limvam/estimators.hpp"
#include "limvam/ica_limvam.hpp"
#include "limvam/io.hpp"
#include "limvam/metrics.hpp"
#include "limvam/ordering.hpp"
#include "limvam/regress.hpp"
#include "limvam/rng.hpp"
#include "limvam/shared_ica.hpp"
#include "limvam/synth.hpp"
