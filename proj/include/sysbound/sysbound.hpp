#pragma once

#include "rational.hpp"
#include "errors.hpp"
#include "pi_scaled.hpp"
#include "series.hpp"
#include "polynomial.hpp"
#include "graded_ring.hpp"
#include "char_classes.hpp"
#include "catalog.hpp"
#include "index_engine.hpp"
#include "cone_engine.hpp"
#include "lattice.hpp"
#include "pushforward.hpp"
#include "descriptor.hpp"
