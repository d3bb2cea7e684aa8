#pragma once

#include "epsqp/classical.hpp"
#include "epsqp/eps.hpp"
#include "epsqp/error.hpp"
#include "epsqp/fft.hpp"
#include "epsqp/grid.hpp"
#include "epsqp/hamiltonian.hpp"
#include "epsqp/numerics.hpp"
#include "epsqp/params.hpp"
#include "epsqp/quantum_potential.hpp"
#include "epsqp/residual.hpp"
#include "epsqp/states.hpp"
#include "epsqp/transforms.hpp"
