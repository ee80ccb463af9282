#pragma once

// Umbrella header for the healie library: exact structure computations for
// twisted Hamiltonian extended affine Lie algebras.

#include "healie/algebra.hpp"
#include "healie/checks.hpp"
#include "healie/config.hpp"
#include "healie/cyclotomic.hpp"
#include "healie/expr.hpp"
#include "healie/lattice.hpp"
#include "healie/rational.hpp"
#include "healie/repr.hpp"
#include "healie/serialize.hpp"
#include "healie/simple_lie.hpp"
#include "healie/structure.hpp"
#include "healie/tau.hpp"
