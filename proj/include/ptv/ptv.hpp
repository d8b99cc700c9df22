#pragma once

#include "ptv/analysis.hpp"
#include "ptv/constructions.hpp"
#include "ptv/core.hpp"
#include "ptv/io.hpp"
#include "ptv/isosig.hpp"
#include "ptv/links.hpp"
#include "ptv/moves.hpp"
#include "ptv/quantum.hpp"
#include "ptv/statesum.hpp"
#include "ptv/surface.hpp"
#include "ptv/triangulation.hpp"
