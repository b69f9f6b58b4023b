#pragma once

#include "multinet/baselines.hpp"
#include "multinet/cluster.hpp"
#include "multinet/decomposition.hpp"
#include "multinet/errors.hpp"
#include "multinet/generate.hpp"
#include "multinet/io.hpp"
#include "multinet/lsm.hpp"
#include "multinet/plot.hpp"
#include "multinet/rng.hpp"
#include "multinet/tensor.hpp"
#include "multinet/twist.hpp"
#include "multinet/version.hpp"
