#pragma once

#include "dpoisson/rational.hpp"
#include "dpoisson/exactla.hpp"
#include "dpoisson/graded.hpp"
#include "dpoisson/comm.hpp"
#include "dpoisson/coalgebra.hpp"
#include "dpoisson/cobar.hpp"
#include "dpoisson/natural.hpp"
#include "dpoisson/cyclic_homology.hpp"
#include "dpoisson/rep.hpp"
#include "dpoisson/kxy.hpp"
#include "dpoisson/io.hpp"
