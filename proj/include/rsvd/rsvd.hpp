#pragma once

// Umbrella header: randomized truncated SVD via subspace iteration and
// block Krylov sketching, with iteration-budget calculators and a
// Monte-Carlo verification harness.

#include "rsvd/bounds.hpp"
#include "rsvd/campaign.hpp"
#include "rsvd/chebyshev.hpp"
#include "rsvd/errors.hpp"
#include "rsvd/init.hpp"
#include "rsvd/linalg.hpp"
#include "rsvd/matrix.hpp"
#include "rsvd/matrix_market.hpp"
#include "rsvd/random.hpp"
#include "rsvd/report.hpp"
#include "rsvd/solvers.hpp"
#include "rsvd/spectrum.hpp"
#include "rsvd/svd.hpp"
