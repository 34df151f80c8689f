#pragma once

#include "swconn/baselines.hpp"
#include "swconn/bench.hpp"
#include "swconn/core.hpp"
#include "swconn/d_tree.hpp"
#include "swconn/driver.hpp"
#include "swconn/index.hpp"
#include "swconn/ingest.hpp"
#include "swconn/lc_tree.hpp"
#include "swconn/oracle.hpp"
#include "swconn/rng.hpp"
#include "swconn/rooted_forest.hpp"
#include "swconn/s_tree.hpp"
#include "swconn/strategy.hpp"
#include "swconn/synth.hpp"
#include "swconn/vertex_table.hpp"
#include "swconn/window_graph.hpp"
