#pragma once

#include "dht/constructions.hpp"
#include "dht/cubes.hpp"
#include "dht/error.hpp"
#include "dht/free_group.hpp"
#include "dht/generators.hpp"
#include "dht/graph.hpp"
#include "dht/grid.hpp"
#include "dht/homology.hpp"
#include "dht/homotopy.hpp"
#include "dht/hurewicz.hpp"
#include "dht/io.hpp"
#include "dht/report.hpp"
#include "dht/smith.hpp"
#include "dht/tsfree.hpp"
