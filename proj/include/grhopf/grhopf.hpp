#pragma once

#include "axioms.hpp"
#include "bar.hpp"
#include "betti.hpp"
#include "certificates.hpp"
#include "dual.hpp"
#include "fplin.hpp"
#include "invariant.hpp"
#include "minres.hpp"
#include "normality.hpp"
#include "parse.hpp"
#include "presentation.hpp"
#include "quotient.hpp"
#include "unitriangular.hpp"
