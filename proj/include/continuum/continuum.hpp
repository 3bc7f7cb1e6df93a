#pragma once

#include "continuum/analytic.hpp"
#include "continuum/config.hpp"
#include "continuum/decimal.hpp"
#include "continuum/error.hpp"
#include "continuum/report.hpp"
#include "continuum/simulator.hpp"
#include "continuum/tier.hpp"
#include "continuum/topology.hpp"
