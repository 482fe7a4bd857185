#pragma once

#include "dirop/errors.hpp"
#include "dirop/estimate.hpp"
#include "dirop/sequences.hpp"
#include "dirop/space.hpp"
#include "dirop/operator.hpp"
#include "dirop/oracle.hpp"
#include "dirop/dynamics.hpp"
#include "dirop/symmetry.hpp"
