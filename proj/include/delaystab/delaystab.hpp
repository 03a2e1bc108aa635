#pragma once

#include "delaystab/delay_map.hpp"
#include "delaystab/discretization.hpp"
#include "delaystab/error.hpp"
#include "delaystab/jury.hpp"
#include "delaystab/polynomial.hpp"
#include "delaystab/sweep.hpp"
#include "delaystab/verdict.hpp"
