#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace twfpd {

/// Finite real n-D array in row-major order with periodic boundary
/// semantics: every index is taken modulo the shape.
struct Signal {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Signal() = default;
  Signal(std::vector<std::size_t> shape_, std::vector<double> data_);

  static Signal zeros(std::vector<std::size_t> shape);

  int dim() const { return static_cast<int>(shape.size()); }
  std::size_t size() const { return data.size(); }

  /// Row-major strides (last axis contiguous).
  std::vector<std::size_t> strides() const;

  double& operator[](std::size_t flat) { return data[flat]; }
  double operator[](std::size_t flat) const { return data[flat]; }

  /// Value at integer coordinates, wrapped periodically.
  double at_wrapped(const std::vector<int>& coords) const;

  double max_abs() const;
  double squared_norm() const;
};

/// Max absolute difference, for signals of identical shape.
double max_abs_diff(const Signal& a, const Signal& b);

}  // namespace twfpd
