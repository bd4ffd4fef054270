#pragma once

#include "dwt.hpp"
#include "error.hpp"
#include "features.hpp"
#include "formats.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "oselm.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "siggen.hpp"
