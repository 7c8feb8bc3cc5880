#ifndef MCCK_MCCK_HPP
#define MCCK_MCCK_HPP

#include "axioms.hpp"
#include "checkers.hpp"
#include "error.hpp"
#include "execution.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "hb.hpp"
#include "incremental.hpp"
#include "mincoh.hpp"
#include "relations.hpp"
#include "trace_io.hpp"

#endif
