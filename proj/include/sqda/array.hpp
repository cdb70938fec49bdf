#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sqda {

/// Error with a stable machine-readable code (e.g. "invalid-dimensions",
/// "too-many-qubits") in addition to the human-readable message.
class SqdaError : public std::runtime_error {
public:
  SqdaError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  [[nodiscard]] const std::string& code() const { return code_; }

private:
  std::string code_;
};

/// A quantum dot position, 1-based row/column.
struct Dot {
  int row = 0;
  int col = 0;
  friend bool operator==(const Dot&, const Dot&) = default;
  friend auto operator<=>(const Dot&, const Dot&) = default;
};

/// The dot/channel graph of a quantum dot array together with the set of
/// columns wired to row-shared control gates and the designated bus row.
///
/// Channels only ever join dots at Manhattan distance 1, and row-shared
/// connectivity is uniform per column. Instances are immutable after
/// construction and safe to share across threads.
class ArrayConfig {
public:
  ArrayConfig(int rows, int cols, int busRow, std::set<int> rColumns,
              const std::vector<std::pair<Dot, Dot>>& channels,
              bool standardChannels = false);

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] int busRow() const { return busRow_; }
  [[nodiscard]] const std::set<int>& rColumns() const { return rColumns_; }

  /// True iff the column is wired to row-shared control gates.
  [[nodiscard]] bool isR(int col) const { return rColumns_.contains(col); }
  [[nodiscard]] bool isR(Dot d) const { return isR(d.col); }

  [[nodiscard]] bool inBounds(Dot d) const {
    return d.row >= 1 && d.row <= rows_ && d.col >= 1 && d.col <= cols_;
  }

  [[nodiscard]] bool hasChannel(Dot a, Dot b) const;

  /// All channels, sorted, for serialization and exhaustive scans.
  [[nodiscard]] std::vector<std::pair<Dot, Dot>> channels() const;

  /// True when this config was produced by buildStandardArray (affects
  /// serialization only).
  [[nodiscard]] bool hasStandardChannels() const { return standardChannels_; }

  [[nodiscard]] int dotIndex(Dot d) const {
    return (d.row - 1) * cols_ + (d.col - 1);
  }
  [[nodiscard]] Dot dotAt(int index) const {
    return Dot{index / cols_ + 1, index % cols_ + 1};
  }
  [[nodiscard]] int dotCount() const { return rows_ * cols_; }

  friend bool operator==(const ArrayConfig& a, const ArrayConfig& b);

private:
  int rows_;
  int cols_;
  int busRow_;
  std::set<int> rColumns_;
  std::unordered_set<std::uint64_t> channelKeys_;
  bool standardChannels_;

  [[nodiscard]] std::uint64_t channelKey(Dot a, Dot b) const;
};

/// Builds the standard array: aisle (row-shared) columns are the even
/// columns, horizontal channels everywhere, vertical channels only inside
/// aisle columns. cols must be even, rows >= 3, 1 < busRow < rows.
ArrayConfig buildStandardArray(int rows, int cols, int busRow);

/// Seat dots: dots in non-R columns off the bus row. These are the resting
/// positions of electrons in ready states.
std::vector<Dot> seatDots(const ArrayConfig& config);

inline bool isSeat(const ArrayConfig& config, Dot d) {
  return config.inBounds(d) && !config.isR(d.col) && d.row != config.busRow();
}

} // namespace sqda
