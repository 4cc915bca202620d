#pragma once

#include "platedamp/beam_basis.hpp"
#include "platedamp/electromech.hpp"
#include "platedamp/errors.hpp"
#include "platedamp/parallel.hpp"
#include "platedamp/plate_model.hpp"
#include "platedamp/quadrature.hpp"
#include "platedamp/ritz.hpp"
#include "platedamp/shunt.hpp"
#include "platedamp/tuning.hpp"
