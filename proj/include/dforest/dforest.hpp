#pragma once

#include "dforest/chain_complex.hpp"
#include "dforest/complex.hpp"
#include "dforest/errors.hpp"
#include "dforest/family.hpp"
#include "dforest/forest.hpp"
#include "dforest/graph.hpp"
#include "dforest/matrix.hpp"
#include "dforest/parallel.hpp"
#include "dforest/quotient.hpp"
#include "dforest/shelling.hpp"
#include "dforest/simplicial_homology.hpp"
#include "dforest/snf.hpp"
