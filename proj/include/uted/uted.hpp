#pragma once

/// Umbrella header.

#include "uted/cubic.hpp"
#include "uted/distance.hpp"
#include "uted/euler_tour.hpp"
#include "uted/matrix_laws.hpp"
#include "uted/matrix_model.hpp"
#include "uted/matrix_product.hpp"
#include "uted/oracle.hpp"
#include "uted/random_tree.hpp"
#include "uted/score.hpp"
#include "uted/subcubic.hpp"
#include "uted/tree.hpp"
