#pragma once

#include "bpsat/alist.hpp"
#include "bpsat/bench.hpp"
#include "bpsat/bp.hpp"
#include "bpsat/cnf.hpp"
#include "bpsat/dimacs.hpp"
#include "bpsat/factor_graph.hpp"
#include "bpsat/generator.hpp"
#include "bpsat/ldpc.hpp"
#include "bpsat/oracle.hpp"
#include "bpsat/rng.hpp"
#include "bpsat/solver.hpp"
