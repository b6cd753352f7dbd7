#pragma once

#include "tricorr/analysis.hpp"
#include "tricorr/complex_matrix.hpp"
#include "tricorr/correlators.hpp"
#include "tricorr/dynamics.hpp"
#include "tricorr/io.hpp"
#include "tricorr/measures.hpp"
#include "tricorr/states.hpp"
