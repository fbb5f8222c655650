#pragma once

#include "confdom/ambient.hpp"
#include "confdom/charts.hpp"
#include "confdom/compactification.hpp"
#include "confdom/errors.hpp"
#include "confdom/figures.hpp"
#include "confdom/geodesics.hpp"
#include "confdom/group_action.hpp"
#include "confdom/hyperboloids.hpp"
#include "confdom/rng.hpp"
#include "confdom/verify.hpp"
