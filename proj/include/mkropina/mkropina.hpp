#pragma once

#include "mkropina/core.hpp"
#include "mkropina/curvature_backends.hpp"
#include "mkropina/flag.hpp"
#include "mkropina/flag_curvature.hpp"
#include "mkropina/fundamental_tensor.hpp"
#include "mkropina/lie_core.hpp"
#include "mkropina/metric.hpp"
#include "mkropina/metric_validity.hpp"
#include "mkropina/parallel_condition.hpp"
#include "mkropina/reductivity.hpp"
#include "mkropina/sampling.hpp"
