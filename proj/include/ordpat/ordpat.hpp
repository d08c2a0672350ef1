#pragma once

#include "ordpat/bigreal.hpp"
#include "ordpat/bounds.hpp"
#include "ordpat/constellation.hpp"
#include "ordpat/error.hpp"
#include "ordpat/induced_path.hpp"
#include "ordpat/induced_path_td.hpp"
#include "ordpat/io.hpp"
#include "ordpat/lowerbound.hpp"
#include "ordpat/ordered_graph.hpp"
#include "ordpat/peel.hpp"
