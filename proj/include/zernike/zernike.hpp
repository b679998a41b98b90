#pragma once

#include "zernike/log_scaled.hpp"
#include "zernike/jacobi.hpp"
#include "zernike/poly.hpp"
#include "zernike/basis.hpp"
#include "zernike/calculus.hpp"
#include "zernike/quadrature.hpp"
#include "zernike/projection.hpp"
#include "zernike/experiments.hpp"
