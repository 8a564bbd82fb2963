#pragma once

// Mean-based-partition fuzzy time series forecasting.

#include "config.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "format.hpp"
#include "fuzzify.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "partition.hpp"
#include "pipeline.hpp"
#include "plot.hpp"
#include "series.hpp"
