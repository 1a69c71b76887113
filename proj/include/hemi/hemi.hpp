#pragma once

#include "hemi/circle_exact.hpp"
#include "hemi/constructions.hpp"
#include "hemi/geometry.hpp"
#include "hemi/hemisphere.hpp"
#include "hemi/montecarlo.hpp"
