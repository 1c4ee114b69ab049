// triqubit.hpp
// Core library: linear algebra, states, measures, GSD, classification, families.
// io.hpp and cli.hpp additionally need json.hpp on the include path.

#pragma once

#include "triqubit/error.hpp"
#include "triqubit/linalg.hpp"
#include "triqubit/states.hpp"
#include "triqubit/measures.hpp"
#include "triqubit/gsd.hpp"
#include "triqubit/classify.hpp"
#include "triqubit/families.hpp"
