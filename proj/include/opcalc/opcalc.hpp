#ifndef OPCALC_OPCALC_HPP
#define OPCALC_OPCALC_HPP

#include "bandlimited.hpp"
#include "common.hpp"
#include "csv.hpp"
#include "doi.hpp"
#include "ideals.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "perturbation.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "run.hpp"
#include "sinc.hpp"
#include "spectral.hpp"
#include "suites.hpp"

#endif
