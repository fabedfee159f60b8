#pragma once

#include <iosfwd>
#include <string>

#include "sphereq/qubit.hpp"

namespace sphereq {

// Plain-text state format used for test fixtures:
//   first line "n=<int>", then 2^n lines "re im" with 17 significant digits.
void write_state(std::ostream& os, const QubitState& state);
void write_state_file(const std::string& path, const QubitState& state);

QubitState read_state(std::istream& is);
QubitState read_state_file(const std::string& path);

}  // namespace sphereq
