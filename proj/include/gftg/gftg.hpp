#pragma once

#include "gftg/error.hpp"
#include "gftg/random.hpp"

#include "gftg/fracops/functionals.hpp"
#include "gftg/fracops/grid.hpp"
#include "gftg/fracops/grunwald.hpp"
#include "gftg/fracops/psi_map.hpp"
#include "gftg/fracops/riesz.hpp"

#include "gftg/prior/covariance.hpp"
#include "gftg/prior/penalty.hpp"

#include "gftg/forward/convolution.hpp"
#include "gftg/forward/elliptic.hpp"
#include "gftg/forward/forward_operator.hpp"
#include "gftg/forward/heat.hpp"
#include "gftg/forward/profiles.hpp"
#include "gftg/forward/tridiagonal.hpp"

#include "gftg/sampler/pcn.hpp"
#include "gftg/sampler/posterior.hpp"

#include "gftg/stats/marginals.hpp"
#include "gftg/stats/summary.hpp"

#include "gftg/experiment/config.hpp"
#include "gftg/experiment/outputs.hpp"
#include "gftg/experiment/pipeline.hpp"
#include "gftg/experiment/table.hpp"
