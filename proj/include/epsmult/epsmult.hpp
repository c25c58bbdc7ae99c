#ifndef EPSMULT_EPSMULT_HPP
#define EPSMULT_EPSMULT_HPP

#include "cache.hpp"
#include "digest.hpp"
#include "epsilon.hpp"
#include "error.hpp"
#include "exponent.hpp"
#include "extrapolate.hpp"
#include "graded_pair.hpp"
#include "instance.hpp"
#include "lattice.hpp"
#include "monomial_ideal.hpp"
#include "okounkov.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "runner.hpp"
#include "toml_lite.hpp"
#include "valuation.hpp"

#endif
