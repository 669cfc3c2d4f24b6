#pragma once

#include "netbound/bounds.hpp"
#include "netbound/flow.hpp"
#include "netbound/instances.hpp"
#include "netbound/limits.hpp"
#include "netbound/network.hpp"
#include "netbound/partition_opt.hpp"
#include "netbound/rational.hpp"
#include "netbound/set_partitions.hpp"
#include "netbound/simplex.hpp"
#include "netbound/small_set.hpp"
#include "netbound/union_find.hpp"
