#pragma once

#include "margulis/bounds.hpp"
#include "margulis/error.hpp"
#include "margulis/freegroup.hpp"
#include "margulis/hypgeom.hpp"
#include "margulis/io.hpp"
#include "margulis/numeric.hpp"
#include "margulis/packing.hpp"
