#ifndef ALTAPPROX_ALTAPPROX_HPP
#define ALTAPPROX_ALTAPPROX_HPP

#include "altapprox/rational_poly.hpp"
#include "altapprox/a_system.hpp"
#include "altapprox/quadrature.hpp"
#include "altapprox/operators.hpp"
#include "altapprox/structured.hpp"
#include "altapprox/expr.hpp"
#include "altapprox/io.hpp"

#endif
