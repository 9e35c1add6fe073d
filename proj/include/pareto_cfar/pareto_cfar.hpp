#ifndef PARETO_CFAR_PARETO_CFAR_HPP_
#define PARETO_CFAR_PARETO_CFAR_HPP_

#include "pareto_cfar/derived_law.hpp"
#include "pareto_cfar/detectors.hpp"
#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/montecarlo.hpp"
#include "pareto_cfar/pareto_model.hpp"
#include "pareto_cfar/random.hpp"
#include "pareto_cfar/rangeprofile.hpp"
#include "pareto_cfar/report.hpp"
#include "pareto_cfar/stats.hpp"
#include "pareto_cfar/validate.hpp"

#endif  // PARETO_CFAR_PARETO_CFAR_HPP_
