#pragma once

#include "weyl/automorphism.hpp"
#include "weyl/element.hpp"
#include "weyl/expr_io.hpp"
#include "weyl/factorization.hpp"
#include "weyl/random.hpp"
#include "weyl/records.hpp"
#include "weyl/star.hpp"
#include "weyl/symplectic.hpp"
