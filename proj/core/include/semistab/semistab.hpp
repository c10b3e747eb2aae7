#pragma once

#include "semistab/core.hpp"
#include "semistab/decompositions.hpp"
#include "semistab/diagnostics.hpp"
#include "semistab/discrete_measure.hpp"
#include "semistab/flow.hpp"
#include "semistab/instances.hpp"
#include "semistab/linalg.hpp"
#include "semistab/matrix_semigroup.hpp"
#include "semistab/measures.hpp"
#include "semistab/multiplication_semigroup.hpp"
#include "semistab/resolvent.hpp"
