#pragma once

#include "common.hpp"
#include "graph.hpp"
#include "generators.hpp"
#include "tree_decomposition.hpp"
#include "separator.hpp"
#include "constructive.hpp"
#include "coarse.hpp"
#include "profile.hpp"
#include "io.hpp"
