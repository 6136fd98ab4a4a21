#pragma once

#include "cpa/arith.hpp"
#include "cpa/abelian.hpp"
#include "cpa/group.hpp"
#include "cpa/pcgroup.hpp"
#include "cpa/constructions.hpp"
#include "cpa/analysis.hpp"
#include "cpa/autos.hpp"
#include "cpa/theorems.hpp"
#include "cpa/suite.hpp"
