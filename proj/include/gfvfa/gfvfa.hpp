#pragma once

#include "core.hpp"
#include "graph.hpp"
#include "spectral.hpp"
#include "chirp.hpp"
#include "distributions.hpp"
#include "filtering.hpp"
#include "io.hpp"
#include "experiment.hpp"
