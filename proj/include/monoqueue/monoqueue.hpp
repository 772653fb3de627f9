#pragma once

#include "monoqueue/binary_heap.hpp"
#include "monoqueue/core.hpp"
#include "monoqueue/dial.hpp"
#include "monoqueue/graph.hpp"
#include "monoqueue/hot_queue.hpp"
#include "monoqueue/multi_level_bucket.hpp"
#include "monoqueue/oracle.hpp"
#include "monoqueue/radix_heap.hpp"
#include "monoqueue/sssp.hpp"
