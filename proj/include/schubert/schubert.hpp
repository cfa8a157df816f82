#pragma once

#include "schubert/cohom.hpp"
#include "schubert/error.hpp"
#include "schubert/factor.hpp"
#include "schubert/io.hpp"
#include "schubert/matrix.hpp"
#include "schubert/milnor.hpp"
#include "schubert/numlin.hpp"
#include "schubert/random.hpp"
#include "schubert/rotor.hpp"
#include "schubert/symbol.hpp"
#include "schubert/tolerance.hpp"
