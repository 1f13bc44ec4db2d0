#include "twfpd/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace twfpd {

Signal::Signal(std::vector<std::size_t> shape_, std::vector<double> data_)
    : shape(std::move(shape_)), data(std::move(data_)) {
  std::size_t expected = 1;
  for (std::size_t s : shape) {
    if (s == 0) throw std::invalid_argument("Signal: zero-sized axis");
    expected *= s;
  }
  if (shape.empty() || expected != data.size()) {
    throw std::invalid_argument("Signal: data size does not match shape");
  }
}

Signal Signal::zeros(std::vector<std::size_t> shape) {
  std::size_t total = 1;
  for (std::size_t s : shape) {
    if (s == 0) throw std::invalid_argument("Signal: zero-sized axis");
    total *= s;
  }
  if (shape.empty()) throw std::invalid_argument("Signal: shape must not be empty");
  return Signal(std::move(shape), std::vector<double>(total, 0.0));
}

std::vector<std::size_t> Signal::strides() const {
  std::vector<std::size_t> s(shape.size());
  std::size_t acc = 1;
  for (int j = dim() - 1; j >= 0; --j) {
    s[j] = acc;
    acc *= shape[j];
  }
  return s;
}

double Signal::at_wrapped(const std::vector<int>& coords) const {
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (int j = dim() - 1; j >= 0; --j) {
    const int extent = static_cast<int>(shape[j]);
    const int wrapped = ((coords[j] % extent) + extent) % extent;
    flat += static_cast<std::size_t>(wrapped) * stride;
    stride *= shape[j];
  }
  return data[flat];
}

double Signal::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

double Signal::squared_norm() const {
  double s = 0.0;
  for (double v : data) s += v * v;
  return s;
}

double max_abs_diff(const Signal& a, const Signal& b) {
  if (a.shape != b.shape) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  }
  return m;
}

}  // namespace twfpd
