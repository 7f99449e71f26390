#pragma once

#include "ihgysin/linalg.hpp"
#include "ihgysin/rational.hpp"
#include "ihgysin/strata.hpp"
#include "ihgysin/cdga.hpp"
#include "ihgysin/cohomology.hpp"
#include "ihgysin/perverse_forms.hpp"
#include "ihgysin/gysin.hpp"
#include "ihgysin/classification.hpp"
#include "ihgysin/models.hpp"
