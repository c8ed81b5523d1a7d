#pragma once

#include "fermat/arrangement.hpp"
#include "fermat/certify.hpp"
#include "fermat/coeff.hpp"
#include "fermat/error.hpp"
#include "fermat/groebner.hpp"
#include "fermat/linear.hpp"
#include "fermat/multipoly.hpp"
#include "fermat/symbolic.hpp"
