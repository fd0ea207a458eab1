#pragma once

#include "rankagg/baselines.hpp"
#include "rankagg/distance.hpp"
#include "rankagg/error.hpp"
#include "rankagg/io.hpp"
#include "rankagg/markov.hpp"
#include "rankagg/matching.hpp"
#include "rankagg/ranking.hpp"
#include "rankagg/result.hpp"
#include "rankagg/table1.hpp"
#include "rankagg/weights.hpp"
