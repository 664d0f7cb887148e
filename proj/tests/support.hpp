#pragma once

#include <initializer_list>
#include <vector>

#include "resmote/dataset.hpp"

namespace testing {

/// Dataset of the given rows, all with one label.
inline resmote::Dataset rows(std::initializer_list<std::vector<double>> xs, resmote::Label y) {
  resmote::Dataset d(xs.begin()->size());
  for (const auto& x : xs) d.add(x, y);
  return d;
}

/// 1-D dataset from negative and positive values.
inline resmote::Dataset line(std::initializer_list<double> neg, std::initializer_list<double> pos) {
  resmote::Dataset d(1);
  for (double v : neg) d.add(std::vector<double>{v}, resmote::Label::negative);
  for (double v : pos) d.add(std::vector<double>{v}, resmote::Label::positive);
  return d;
}

}  // namespace testing
