/**
 * @file nullhyp.hpp
 * @brief Convenience umbrella: pulls in the whole library.
 */
#pragma once

#include "nullhyp/charts.hpp"
#include "nullhyp/errors.hpp"
#include "nullhyp/fixtures.hpp"
#include "nullhyp/gauge.hpp"
#include "nullhyp/higgs.hpp"
#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/involution.hpp"
#include "nullhyp/json_io.hpp"
#include "nullhyp/kempf_ness.hpp"
#include "nullhyp/mat2.hpp"
#include "nullhyp/minkowski.hpp"
#include "nullhyp/rng.hpp"
#include "nullhyp/verify.hpp"
