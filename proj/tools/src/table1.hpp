#pragma once

#include "mollify/moments.hpp"
#include "mollify/rational.hpp"

#include <vector>

namespace mollify::cli {

struct Table1Row {
    int k = 0;
    MollifierSpec spec;  // delta1 = delta2 = 1
    Rational published;  // four-decimal lower bound as printed
};

/// The four published rows, k = 0..3.
const std::vector<Table1Row>& table1_rows();

/// k = 0 row with Q = 0.45x: the polynomial that reproduces the printed 0.3411.
const Table1Row& table1_k0_corrected();

}  // namespace mollify::cli
