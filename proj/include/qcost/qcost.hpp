#pragma once

// Umbrella header.

#include "qcost/error.hpp"
#include "qcost/catalog.hpp"
#include "qcost/grover.hpp"
#include "qcost/surface_code.hpp"
#include "qcost/tradeoff.hpp"
#include "qcost/report.hpp"
