#pragma once

#include "apqcone.hpp"
#include "combinat.hpp"
#include "horncone.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "polyhedra.hpp"
#include "rational.hpp"
