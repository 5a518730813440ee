#include "monotile/matrix.hpp"

#include <algorithm>

#include "monotile/error.hpp"

namespace monotile {

ManagedMatrix::ManagedMatrix(std::size_t rows, std::size_t cols, Integer ratio,
                             std::vector<Integer> entries)
    : _rows(rows), _cols(cols), _ratio(std::move(ratio)), _entries(std::move(entries)) {
  if (_entries.size() != rows * cols) {
    throw Error(ErrorCode::dimension_mismatch,
                "expected " + std::to_string(rows * cols) + " entries, got "
                    + std::to_string(_entries.size()));
  }
}

ManagedMatrix ManagedMatrix::from_rows(std::vector<std::vector<long>> const& rows) {
  if (rows.empty() || rows[0].empty()) {
    throw Error(ErrorCode::dimension_mismatch, "empty matrix");
  }
  std::size_t          c = rows[0].size();
  std::vector<Integer> e;
  for (auto const& r : rows) {
    if (r.size() != c) {
      throw Error(ErrorCode::dimension_mismatch, "ragged matrix rows");
    }
    for (long x : r) {
      e.emplace_back(x);
    }
  }
  Integer ratio(0);
  for (auto const& r : rows) {
    ratio += r[0];
  }
  return ManagedMatrix(rows.size(), c, ratio, std::move(e));
}

ManagedMatrix ManagedMatrix::identity(std::size_t k, Integer const& ratio) {
  std::vector<Integer> e(k * k, Integer(0));
  for (std::size_t i = 0; i < k; ++i) {
    e[i * k + i] = ratio;
  }
  return ManagedMatrix(k, k, ratio, std::move(e));
}

std::vector<Integer> ManagedMatrix::column(std::size_t j) const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < _rows; ++i) {
    out.push_back((*this)(i, j));
  }
  return out;
}

Integer ManagedMatrix::column_sum(std::size_t j) const {
  Integer s(0);
  for (std::size_t i = 0; i < _rows; ++i) {
    s += (*this)(i, j);
  }
  return s;
}

Integer ManagedMatrix::min_entry() const {
  return *std::min_element(_entries.begin(), _entries.end());
}

bool ManagedMatrix::strictly_positive() const {
  return std::all_of(_entries.begin(), _entries.end(), [](Integer const& x) { return x > 0; });
}

std::string ManagedMatrix::managed_violation(bool min_dims) const {
  if (min_dims && (_rows < 2 || _cols < 2)) {
    return "shape " + std::to_string(_rows) + "x" + std::to_string(_cols)
           + " needs at least 2 rows and 2 columns";
  }
  for (std::size_t i = 0; i < _rows; ++i) {
    for (std::size_t j = 0; j < _cols; ++j) {
      if ((*this)(i, j) < 0) {
        return "negative entry at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      }
    }
  }
  for (std::size_t j = 0; j < _cols; ++j) {
    auto s = column_sum(j);
    if (s != _ratio) {
      return "column " + std::to_string(j + 1) + " sums to " + s.get_str() + ", expected "
             + _ratio.get_str();
    }
  }
  return "";
}

void ManagedMatrix::check_managed(bool min_dims) const {
  auto v = managed_violation(min_dims);
  if (!v.empty()) {
    throw Error(ErrorCode::managed, v);
  }
}

std::string ManagedMatrix::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < _rows; ++i) {
    out += i == 0 ? "[" : ",[";
    for (std::size_t j = 0; j < _cols; ++j) {
      if (j != 0) {
        out += ',';
      }
      out += (*this)(i, j).get_str();
    }
    out += ']';
  }
  return out + "]";
}

ManagedMatrix operator*(ManagedMatrix const& a, ManagedMatrix const& b) {
  if (a._cols != b._rows) {
    throw Error(ErrorCode::dimension_mismatch,
                "cannot multiply " + std::to_string(a._rows) + "x" + std::to_string(a._cols)
                    + " by " + std::to_string(b._rows) + "x" + std::to_string(b._cols));
  }
  std::vector<Integer> e(a._rows * b._cols, Integer(0));
  for (std::size_t i = 0; i < a._rows; ++i) {
    for (std::size_t k = 0; k < a._cols; ++k) {
      auto const& x = a(i, k);
      if (x == 0) {
        continue;
      }
      for (std::size_t j = 0; j < b._cols; ++j) {
        e[i * b._cols + j] += x * b(k, j);
      }
    }
  }
  return ManagedMatrix(a._rows, b._cols, Integer(a._ratio * b._ratio), std::move(e));
}

ManagedMatrix product_range(std::vector<ManagedMatrix> const& ms, std::size_t from, std::size_t to) {
  if (from >= to || to > ms.size()) {
    throw Error(ErrorCode::insufficient_depth, "empty or out-of-range matrix product");
  }
  ManagedMatrix p = ms[from];
  for (std::size_t i = from + 1; i < to; ++i) {
    p = p * ms[i];
  }
  return p;
}

}  // namespace monotile
