#pragma once

#include "sl2fusion/errors.hpp"
#include "sl2fusion/scalar.hpp"
#include "sl2fusion/linalg.hpp"
#include "sl2fusion/fock.hpp"
#include "sl2fusion/fusion.hpp"
#include "sl2fusion/types.hpp"
#include "sl2fusion/schubert.hpp"
#include "sl2fusion/verlinde.hpp"
