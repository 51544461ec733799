#pragma once

// Umbrella header.

#include "fracspec/bounds.hpp"
#include "fracspec/coherent.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/io.hpp"
#include "fracspec/potential.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/reference.hpp"
#include "fracspec/semiclassical.hpp"
#include "fracspec/smoothed.hpp"
#include "fracspec/specfun.hpp"
#include "fracspec/spectrum.hpp"
#include "fracspec/verify.hpp"
