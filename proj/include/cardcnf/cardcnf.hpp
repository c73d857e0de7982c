#pragma once

#include "amk.hpp"
#include "amo.hpp"
#include "amo_graph.hpp"
#include "bench.hpp"
#include "circuits.hpp"
#include "cnf.hpp"
#include "dimacs.hpp"
#include "instances.hpp"
#include "registry.hpp"
#include "set_families.hpp"
#include "verify.hpp"
