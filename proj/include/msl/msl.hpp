#pragma once

#include "msl/adapters.hpp"
#include "msl/boundary.hpp"
#include "msl/measure.hpp"
#include "msl/mde.hpp"
#include "msl/problem_file.hpp"
#include "msl/spectral.hpp"
#include "msl/sturm_liouville.hpp"
