#pragma once

#include "tilekit/arith.hpp"
#include "tilekit/bigint.hpp"
#include "tilekit/bounds.hpp"
#include "tilekit/cyclotomic.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/multiset.hpp"
#include "tilekit/polynomial.hpp"
#include "tilekit/tiling.hpp"
