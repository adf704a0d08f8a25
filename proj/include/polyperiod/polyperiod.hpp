#pragma once

#include "polyperiod/boundary.hpp"
#include "polyperiod/errors.hpp"
#include "polyperiod/hodge_linear.hpp"
#include "polyperiod/matrix.hpp"
#include "polyperiod/ode.hpp"
#include "polyperiod/path.hpp"
#include "polyperiod/polylog.hpp"
#include "polyperiod/rational.hpp"
#include "polyperiod/tate_lie.hpp"
#include "polyperiod/transport.hpp"
