#pragma once

#include "rankduel/dyadic.hpp"
#include "rankduel/enumerate.hpp"
#include "rankduel/errors.hpp"
#include "rankduel/game.hpp"
#include "rankduel/graph.hpp"
#include "rankduel/io.hpp"
#include "rankduel/ranking.hpp"
#include "rankduel/solver.hpp"
#include "rankduel/strategies.hpp"
#include "rankduel/suites.hpp"
#include "rankduel/tree_ranker.hpp"
