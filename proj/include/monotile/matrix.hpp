#pragma once

// Nonnegative integer matrices whose columns all sum to the same ratio
// |F_{n+1}| / |F_n|.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "monotile/rational.hpp"

namespace monotile {

class ManagedMatrix {
 public:
  ManagedMatrix() = default;
  // No validation; call check_managed().
  ManagedMatrix(std::size_t rows, std::size_t cols, Integer ratio, std::vector<Integer> entries);
  // Ratio taken from the first column sum.
  static ManagedMatrix from_rows(std::vector<std::vector<long>> const& rows);
  static ManagedMatrix identity(std::size_t k, Integer const& ratio);

  std::size_t rows() const noexcept {
    return _rows;
  }
  std::size_t cols() const noexcept {
    return _cols;
  }
  Integer const& ratio() const noexcept {
    return _ratio;
  }
  // 0-based indices.
  Integer const& operator()(std::size_t i, std::size_t j) const {
    return _entries[i * _cols + j];
  }
  Integer& operator()(std::size_t i, std::size_t j) {
    return _entries[i * _cols + j];
  }
  std::vector<Integer> const& entries() const noexcept {
    return _entries;
  }
  std::vector<Integer> column(std::size_t j) const;
  Integer column_sum(std::size_t j) const;
  Integer min_entry() const;
  bool    strictly_positive() const;

  // Throws a managed error unless all entries are >= 0, every column sums to
  // ratio and (when min_dims) rows, cols >= 2.
  void check_managed(bool min_dims = true) const;
  // Describes the first violation, or returns "" if managed.
  std::string managed_violation(bool min_dims = true) const;

  std::string str() const;

  friend ManagedMatrix operator*(ManagedMatrix const& a, ManagedMatrix const& b);
  friend bool          operator==(ManagedMatrix const& a, ManagedMatrix const& b) = default;

 private:
  std::size_t          _rows = 0;
  std::size_t          _cols = 0;
  Integer              _ratio;
  std::vector<Integer> _entries;
};

// Product M_from * M_{from+1} * ... * M_{to-1}.
ManagedMatrix product_range(std::vector<ManagedMatrix> const& ms, std::size_t from, std::size_t to);

}  // namespace monotile
