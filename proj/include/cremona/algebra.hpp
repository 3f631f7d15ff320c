#pragma once

#include "cremona/algebra/factor.hpp"
#include "cremona/algebra/field.hpp"
#include "cremona/algebra/forms.hpp"
#include "cremona/algebra/gcd.hpp"
#include "cremona/algebra/matrix.hpp"
#include "cremona/algebra/mpoly.hpp"
#include "cremona/algebra/parse.hpp"
#include "cremona/algebra/upoly.hpp"
