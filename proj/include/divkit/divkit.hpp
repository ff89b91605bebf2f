#ifndef DIVKIT_DIVKIT_HPP
#define DIVKIT_DIVKIT_HPP

#include "divkit/core.hpp"
#include "divkit/corpus_io.hpp"
#include "divkit/metrics.hpp"
#include "divkit/pos_stats.hpp"
#include "divkit/projection.hpp"
#include "divkit/report_io.hpp"
#include "divkit/rules.hpp"
#include "divkit/transform.hpp"
#include "divkit/tree_ops.hpp"

#endif  // DIVKIT_DIVKIT_HPP
