#pragma once

#include "sqda/array.hpp"
#include "sqda/machine.hpp"

#include <map>
#include <memory>

namespace sqda::test {

inline std::shared_ptr<const ArrayConfig> standardConfig(int rows = 8, int cols = 16,
                                                         int bus = 4) {
  return std::make_shared<const ArrayConfig>(buildStandardArray(rows, cols, bus));
}

inline MachineState makeState(std::shared_ptr<const ArrayConfig> config,
                              std::map<int, Dot> placement) {
  return MachineState(std::move(config), std::move(placement));
}

} // namespace sqda::test
