#pragma once

#include "diter/cost_model.hpp"
#include "diter/diffusion.hpp"
#include "diter/edge_list.hpp"
#include "diter/error.hpp"
#include "diter/graph.hpp"
#include "diter/operator.hpp"
#include "diter/scheduler.hpp"
#include "diter/solver.hpp"
#include "diter/synthetic.hpp"
