#ifndef PDM_PDM_HPP
#define PDM_PDM_HPP

#include "pdm/calculus.hpp"
#include "pdm/errors.hpp"
#include "pdm/grid.hpp"
#include "pdm/mass_profile.hpp"
#include "pdm/oracle.hpp"
#include "pdm/oscillator.hpp"
#include "pdm/potentials.hpp"
#include "pdm/runner.hpp"
#include "pdm/susy.hpp"
#include "pdm/transform.hpp"

#endif
