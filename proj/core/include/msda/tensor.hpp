// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "msda/check.hpp"
#include "msda/rng.hpp"

namespace msda {

/// Dense row-major n-d array. Double precision is the scalar type on every
/// verification path; the float instantiation exists for benchmark-only code.
template <typename T>
class TensorT {
 public:
  TensorT() = default;

  explicit TensorT(std::vector<int64_t> shape) : shape_(std::move(shape)) {
    data_.assign(static_cast<size_t>(numel_of(shape_)), T(0));
  }

  TensorT(std::vector<int64_t> shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    MSDA_CHECK(numel_of(shape_) == static_cast<int64_t>(data_.size()),
               "shape/data length mismatch: " << numel_of(shape_) << " vs " << data_.size());
  }

  static TensorT zeros(std::vector<int64_t> shape) { return TensorT(std::move(shape)); }

  static TensorT full(std::vector<int64_t> shape, T value) {
    TensorT t(std::move(shape));
    for (auto& v : t.data_) v = value;
    return t;
  }

  static TensorT uniform(std::vector<int64_t> shape, Rng& rng, T lo = T(0), T hi = T(1)) {
    TensorT t(std::move(shape));
    for (auto& v : t.data_) v = static_cast<T>(rng.uniform(lo, hi));
    return t;
  }

  int rank() const { return static_cast<int>(shape_.size()); }
  int64_t size(int dim) const { return shape_[static_cast<size_t>(dim)]; }
  const std::vector<int64_t>& shape() const { return shape_; }
  int64_t numel() const { return static_cast<int64_t>(data_.size()); }
  bool same_shape(const TensorT& o) const { return shape_ == o.shape_; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& vec() { return data_; }
  const std::vector<T>& vec() const { return data_; }

  T& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
  const T& operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

  template <typename... I>
  T& at(I... idx) {
    return data_[static_cast<size_t>(offset(idx...))];
  }
  template <typename... I>
  const T& at(I... idx) const {
    return data_[static_cast<size_t>(offset(idx...))];
  }

  template <typename... I>
  int64_t offset(I... idx) const {
    static_assert((std::is_integral_v<I> && ...), "indices must be integral");
    MSDA_CHECK(sizeof...(I) == shape_.size(),
               "rank mismatch: got " << sizeof...(I) << " indices for rank " << shape_.size());
    const std::array<int64_t, sizeof...(I)> ix{static_cast<int64_t>(idx)...};
    int64_t off = 0;
    for (size_t d = 0; d < ix.size(); ++d) {
      off = off * shape_[d] + ix[d];
    }
    return off;
  }

  void fill(T value) {
    for (auto& v : data_) v = value;
  }

  bool all_finite() const {
    for (const auto& v : data_) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }

  bool operator==(const TensorT& o) const { return shape_ == o.shape_ && data_ == o.data_; }

  static int64_t numel_of(const std::vector<int64_t>& shape) {
    int64_t n = 1;
    for (int64_t e : shape) {
      MSDA_CHECK(e >= 0, "negative extent " << e);
      n *= e;
    }
    return n;
  }

 private:
  std::vector<int64_t> shape_;
  std::vector<T> data_;
};

using Tensor = TensorT<double>;

inline std::string shape_str(const std::vector<int64_t>& shape) {
  std::string s = "(";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

/// Max |a-b| over all elements; shapes must match.
template <typename T>
double max_abs_diff(const TensorT<T>& a, const TensorT<T>& b) {
  MSDA_CHECK(a.same_shape(b), "shape mismatch " << shape_str(a.shape()) << " vs "
                                                << shape_str(b.shape()));
  double m = 0.0;
  for (int64_t i = 0; i < a.numel(); ++i) {
    m = std::max(m, std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])));
  }
  return m;
}

template <typename T>
double max_abs(const TensorT<T>& a) {
  double m = 0.0;
  for (int64_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(static_cast<double>(a[i])));
  return m;
}

/// FNV-1a over the raw little-endian bytes; used for bitwise checksums.
uint64_t fnv1a64(const void* bytes, size_t n, uint64_t h = 0xcbf29ce484222325ULL);

template <typename T>
uint64_t checksum(const TensorT<T>& t, uint64_t h = 0xcbf29ce484222325ULL) {
  return fnv1a64(t.data(), sizeof(T) * static_cast<size_t>(t.numel()), h);
}

std::string hex64(uint64_t v);

}  // namespace msda
