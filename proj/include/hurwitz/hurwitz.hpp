#pragma once

// Umbrella header: branch-data types, realizability decision, and the
// complexity searches.  JSON serialization and the verdict cache live in
// hurwitz/json_io.hpp and hurwitz/cache.hpp and pull in the vendored JSON
// library, so they are opt-in.

#include "hurwitz/complexity.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/partition.hpp"
#include "hurwitz/permutation.hpp"
#include "hurwitz/realizability.hpp"
#include "hurwitz/triplet.hpp"
