#pragma once

// Umbrella header.

#include "mixquant/density.hpp"
#include "mixquant/mixed_quant.hpp"
#include "mixquant/oracle.hpp"
#include "mixquant/plot.hpp"
#include "mixquant/selector.hpp"
#include "mixquant/table.hpp"
#include "mixquant/uniform_quant.hpp"
#include "mixquant/version.hpp"
