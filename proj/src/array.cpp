#include "sqda/array.hpp"

#include <algorithm>
#include <cstdlib>

namespace sqda {

std::uint64_t ArrayConfig::channelKey(Dot a, Dot b) const {
  auto ia = static_cast<std::uint64_t>(dotIndex(a));
  auto ib = static_cast<std::uint64_t>(dotIndex(b));
  if (ia > ib) {
    std::swap(ia, ib);
  }
  return ia * static_cast<std::uint64_t>(dotCount()) + ib;
}

ArrayConfig::ArrayConfig(int rows, int cols, int busRow, std::set<int> rColumns,
                         const std::vector<std::pair<Dot, Dot>>& channels,
                         bool standardChannels)
    : rows_(rows), cols_(cols), busRow_(busRow), rColumns_(std::move(rColumns)),
      standardChannels_(standardChannels) {
  if (rows_ < 1 || cols_ < 1) {
    throw SqdaError("invalid-dimensions", "array must have at least one row and column");
  }
  if (busRow_ < 1 || busRow_ > rows_) {
    throw SqdaError("invalid-dimensions", "bus_row out of range");
  }
  for (int c : rColumns_) {
    if (c < 1 || c > cols_) {
      throw SqdaError("invalid-dimensions", "r_column index out of range");
    }
  }
  for (const auto& [a, b] : channels) {
    if (!inBounds(a) || !inBounds(b)) {
      throw SqdaError("invalid-dimensions", "channel endpoint out of range");
    }
    if (std::abs(a.row - b.row) + std::abs(a.col - b.col) != 1) {
      throw SqdaError("invalid-dimensions",
                      "channels must join dots at Manhattan distance 1");
    }
    channelKeys_.insert(channelKey(a, b));
  }
}

bool ArrayConfig::hasChannel(Dot a, Dot b) const {
  if (!inBounds(a) || !inBounds(b)) {
    return false;
  }
  return channelKeys_.contains(channelKey(a, b));
}

std::vector<std::pair<Dot, Dot>> ArrayConfig::channels() const {
  std::vector<std::pair<Dot, Dot>> out;
  out.reserve(channelKeys_.size());
  for (int r = 1; r <= rows_; ++r) {
    for (int c = 1; c <= cols_; ++c) {
      const Dot d{r, c};
      const Dot right{r, c + 1};
      const Dot down{r + 1, c};
      if (hasChannel(d, right)) {
        out.emplace_back(d, right);
      }
      if (hasChannel(d, down)) {
        out.emplace_back(d, down);
      }
    }
  }
  return out;
}

bool operator==(const ArrayConfig& a, const ArrayConfig& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.busRow_ == b.busRow_ &&
         a.rColumns_ == b.rColumns_ && a.channelKeys_ == b.channelKeys_;
}

ArrayConfig buildStandardArray(int rows, int cols, int busRow) {
  if (cols % 2 != 0 || rows < 3 || busRow <= 1 || busRow >= rows) {
    throw SqdaError("invalid-dimensions",
                    "standard array needs even cols, rows >= 3, 1 < bus_row < rows");
  }
  std::set<int> rColumns;
  for (int c = 2; c <= cols; c += 2) {
    rColumns.insert(c);
  }
  std::vector<std::pair<Dot, Dot>> channels;
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c < cols; ++c) {
      channels.push_back({Dot{r, c}, Dot{r, c + 1}});
    }
  }
  for (int c : rColumns) {
    for (int r = 1; r < rows; ++r) {
      channels.push_back({Dot{r, c}, Dot{r + 1, c}});
    }
  }
  return ArrayConfig(rows, cols, busRow, std::move(rColumns), channels, true);
}

std::vector<Dot> seatDots(const ArrayConfig& config) {
  std::vector<Dot> seats;
  for (int r = 1; r <= config.rows(); ++r) {
    if (r == config.busRow()) {
      continue;
    }
    for (int c = 1; c <= config.cols(); ++c) {
      if (!config.isR(c)) {
        seats.push_back(Dot{r, c});
      }
    }
  }
  return seats;
}

} // namespace sqda
