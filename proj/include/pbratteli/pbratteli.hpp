#pragma once

/**
 * @file pbratteli.hpp
 * @brief Umbrella header for the p-Bratteli diagram library.
 */

#include "core.hpp"
#include "diagram.hpp"
#include "fibo.hpp"
#include "gfs.hpp"
#include "paths.hpp"
#include "stats.hpp"
#include "verify.hpp"
