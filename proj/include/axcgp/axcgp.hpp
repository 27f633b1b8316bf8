#pragma once

#include "analysis.hpp"
#include "constraints.hpp"
#include "cost.hpp"
#include "gate.hpp"
#include "genome.hpp"
#include "golden.hpp"
#include "matrix.hpp"
#include "metrics.hpp"
#include "mutation.hpp"
#include "netlist.hpp"
#include "params.hpp"
#include "search.hpp"
#include "simulator.hpp"
#include "verilog.hpp"
