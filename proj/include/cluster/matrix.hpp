#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cluster {

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long long& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  long long operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix top(int k) const;  // first k rows
  std::vector<long long> row(int i) const;
  std::vector<long long> col(int j) const;
  std::vector<std::vector<long long>> to_rows() const;
  std::vector<long long> apply(const std::vector<long long>& v) const;  // M v

  bool operator==(const IntMatrix& o) const = default;
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<long long> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);

inline long long pos_part(long long v) { return v > 0 ? v : 0; }
inline long long neg_part(long long v) { return v < 0 ? v : 0; }  // [v]_- = min(0, v)

}  // namespace cluster
