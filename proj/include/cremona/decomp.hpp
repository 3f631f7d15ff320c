#pragma once

#include "cremona/decomp/conic_group.hpp"
#include "cremona/decomp/factorization.hpp"
#include "cremona/decomp/phi.hpp"
#include "cremona/decomp/express.hpp"
#include "cremona/decomp/lemmas.hpp"
#include "cremona/decomp/lift.hpp"
#include "cremona/decomp/xd.hpp"
#include "cremona/decomp/certificate.hpp"
