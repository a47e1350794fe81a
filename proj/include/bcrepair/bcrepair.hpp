#pragma once

#include "bcrepair/capacity_bound.hpp"
#include "bcrepair/flowgraph.hpp"
#include "bcrepair/galois_field.hpp"
#include "bcrepair/mincut.hpp"
#include "bcrepair/model.hpp"
#include "bcrepair/random.hpp"
#include "bcrepair/rational.hpp"
#include "bcrepair/rlnc_sim.hpp"
#include "bcrepair/serialize.hpp"
#include "bcrepair/tradeoff.hpp"
