#pragma once

#include "spmul/arith.hpp"
#include "spmul/bigint.hpp"
#include "spmul/error.hpp"
#include "spmul/interp.hpp"
#include "spmul/io.hpp"
#include "spmul/multivar.hpp"
#include "spmul/poly.hpp"
#include "spmul/product.hpp"
#include "spmul/random.hpp"
#include "spmul/ring.hpp"
#include "spmul/verify.hpp"
