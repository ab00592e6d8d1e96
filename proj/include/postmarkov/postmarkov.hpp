// postmarkov.hpp: Convenience header pulling in the whole library

#pragma once

#include "postmarkov/bath.hpp"
#include "postmarkov/diagnostics.hpp"
#include "postmarkov/errors.hpp"
#include "postmarkov/generators.hpp"
#include "postmarkov/integrator.hpp"
#include "postmarkov/linalg.hpp"
#include "postmarkov/oracles.hpp"
#include "postmarkov/quadrature.hpp"
#include "postmarkov/runner.hpp"
#include "postmarkov/scenario.hpp"
#include "postmarkov/simulation.hpp"
