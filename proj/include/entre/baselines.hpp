#pragma once

#include "entre/model.hpp"

namespace entre {

// Classic OSPF: all traffic on the minimum-hop path of each pair, ties
// broken by lowest path index. Unused paths keep x = 0 but are not
// excluded and their links stay awake.
void ospf_assign(Scenario& sc);

// Uniform 1/|P_i| split across every path.
void equal_split_assign(Scenario& sc);

}  // namespace entre
