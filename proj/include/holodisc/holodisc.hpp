#pragma once

#include "holodisc/errors.hpp"
#include "holodisc/dual.hpp"
#include "holodisc/domain.hpp"
#include "holodisc/fourier.hpp"
#include "holodisc/disc.hpp"
#include "holodisc/kobayashi.hpp"
#include "holodisc/stationary.hpp"
#include "holodisc/linalg.hpp"
#include "holodisc/rhfactor.hpp"
#include "holodisc/solver.hpp"
