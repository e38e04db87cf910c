#pragma once

#include "tvlab/error.hpp"
#include "tvlab/rational.hpp"
#include "tvlab/lp.hpp"
#include "tvlab/geometry.hpp"
#include "tvlab/random.hpp"
#include "tvlab/partitions.hpp"
#include "tvlab/tverberg.hpp"
#include "tvlab/poset.hpp"
#include "tvlab/complexes.hpp"
#include "tvlab/homology.hpp"
#include "tvlab/morse.hpp"
#include "tvlab/sarkaria.hpp"
#include "tvlab/generators.hpp"
#include "tvlab/instance_io.hpp"
