#pragma once

#include "circuits/augment.hpp"
#include "circuits/circuit_enum.hpp"
#include "circuits/combinatorics.hpp"
#include "circuits/error.hpp"
#include "circuits/exactnum.hpp"
#include "circuits/format.hpp"
#include "circuits/lpsolve.hpp"
#include "circuits/polyhedron.hpp"
#include "circuits/polymodel.hpp"
#include "circuits/vertex_enum.hpp"
#include "circuits/walks.hpp"
