#pragma once

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/errors.hpp"
#include "rootcurve/family.hpp"
#include "rootcurve/locator.hpp"
#include "rootcurve/root_solver.hpp"
#include "rootcurve/spec_io.hpp"
#include "rootcurve/theta_kernel.hpp"
#include "rootcurve/trinomial.hpp"
