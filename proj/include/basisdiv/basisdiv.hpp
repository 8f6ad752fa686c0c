#pragma once

// Umbrella header: exact semisimplicity and simplicity analysis of
// finite-dimensional algebras given by structure constants.

#include "basisdiv/scalar.hpp"
#include "basisdiv/linalg.hpp"
#include "basisdiv/algebra.hpp"
#include "basisdiv/division.hpp"
#include "basisdiv/oracle.hpp"
#include "basisdiv/decomposition.hpp"
#include "basisdiv/fuzz.hpp"
#include "basisdiv/io.hpp"
