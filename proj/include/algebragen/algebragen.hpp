/**
 * @file algebragen.hpp
 * @brief Umbrella header.
 */
#pragma once

#include <algebragen/algebra.hpp>
#include <algebragen/elimination.hpp>
#include <algebragen/errors.hpp>
#include <algebragen/genfun.hpp>
#include <algebragen/linalg.hpp>
#include <algebragen/matrix.hpp>
#include <algebragen/modp.hpp>
#include <algebragen/numeric.hpp>
#include <algebragen/oracle.hpp>
#include <algebragen/primes.hpp>
#include <algebragen/scalar.hpp>
#include <algebragen/structure.hpp>
