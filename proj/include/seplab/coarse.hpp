#pragma once

#include "coarse/asdim.hpp"
#include "coarse/hyperbolicity.hpp"
#include "coarse/levelsets.hpp"
#include "coarse/maps.hpp"
#include "coarse/quotient.hpp"
