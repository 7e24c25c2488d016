#pragma once

// Everything except the bundle reader/writer, which also needs OpenSSL.

#include "svpcp/biased.hpp"
#include "svpcp/builders.hpp"
#include "svpcp/circuit.hpp"
#include "svpcp/coins.hpp"
#include "svpcp/csp.hpp"
#include "svpcp/ecc.hpp"
#include "svpcp/field.hpp"
#include "svpcp/graphs.hpp"
#include "svpcp/ldt.hpp"
#include "svpcp/linalg.hpp"
#include "svpcp/pcpp.hpp"
#include "svpcp/rational.hpp"
#include "svpcp/reduction.hpp"
#include "svpcp/rmcode.hpp"
#include "svpcp/rng.hpp"
#include "svpcp/solver.hpp"
#include "svpcp/transcript.hpp"
