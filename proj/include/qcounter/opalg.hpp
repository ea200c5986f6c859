#pragma once

#include "qcounter/opalg/coeff.hpp"
#include "qcounter/opalg/expectation.hpp"
#include "qcounter/opalg/expr.hpp"
#include "qcounter/opalg/ordering.hpp"
#include "qcounter/opalg/parse.hpp"
#include "qcounter/opalg/squeezer.hpp"
