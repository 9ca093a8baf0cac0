#pragma once

#include "circuitpoly/cayley_menger.hpp"
#include "circuitpoly/connectivity.hpp"
#include "circuitpoly/construction.hpp"
#include "circuitpoly/graph.hpp"
#include "circuitpoly/integer.hpp"
#include "circuitpoly/isomorphism.hpp"
#include "circuitpoly/monomial.hpp"
#include "circuitpoly/multipoly.hpp"
#include "circuitpoly/named_circuits.hpp"
#include "circuitpoly/pipeline.hpp"
#include "circuitpoly/poly_format.hpp"
#include "circuitpoly/sparsity.hpp"
#include "circuitpoly/sylvester.hpp"
