#pragma once

#include "twistcoh/rational.hpp"
#include "twistcoh/matrix.hpp"
#include "twistcoh/linalg.hpp"
#include "twistcoh/algebra.hpp"
#include "twistcoh/bimodule.hpp"
#include "twistcoh/ideal.hpp"
#include "twistcoh/catalog.hpp"
#include "twistcoh/triangular.hpp"
#include "twistcoh/cohomology.hpp"
#include "twistcoh/duals.hpp"
#include "twistcoh/amenability.hpp"
