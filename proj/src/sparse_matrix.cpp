#include "khbound/sparse_matrix.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace khbound {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set: index out of range");
  if (value.is_zero()) {
    data_[r].erase(c);
  } else {
    data_[r][c] = value;
  }
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add: index out of range");
  if (value.is_zero()) return;
  auto [it, inserted] = data_[r].try_emplace(c, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) data_[r].erase(it);
  }
}

Rational SparseMatrix::get(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::get: index out of range");
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Rational() : it->second;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  }
  return t;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix product: dimension mismatch");
  SparseMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (const auto& [k, av] : a.data_[r]) {
      for (const auto& [c, bv] : b.data_[k]) out.add(r, c, av * bv);
    }
  }
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

using Row = std::vector<std::pair<std::size_t, Rational>>;

// row -= factor * pivot, both sorted by column. Reports columns that appeared
// in or vanished from `row`.
void axpy_row(Row& row, const Row& pivot, const Rational& factor, std::vector<std::size_t>& gained,
              std::vector<std::size_t>& lost) {
  Row out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(std::move(row[i]));
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -(factor * pivot[j].second));
      gained.push_back(pivot[j].first);
      ++j;
    } else {
      Rational v = row[i].second - factor * pivot[j].second;
      if (v.is_zero()) {
        lost.push_back(row[i].first);
      } else {
        out.emplace_back(row[i].first, std::move(v));
      }
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  std::vector<Row> rows(nr);
  std::vector<std::set<std::size_t>> col_rows(nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (const auto& [c, v] : m.row(r)) {
      rows[r].emplace_back(c, v);
      col_rows[c].insert(r);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> queue;  // (count, col)
  for (std::size_t c = 0; c < nc; ++c) {
    if (!col_rows[c].empty()) queue.emplace(col_rows[c].size(), c);
  }
  auto touch = [&](std::size_t c, std::size_t old_count) {
    queue.erase({old_count, c});
    if (!col_rows[c].empty()) queue.emplace(col_rows[c].size(), c);
  };

  std::size_t result = 0;
  std::vector<std::size_t> gained;
  std::vector<std::size_t> lost;
  while (!queue.empty()) {
    const std::size_t col = queue.begin()->second;
    // Shortest row in the column; unit pivots before others, then lowest index.
    std::size_t prow = 0;
    bool found = false;
    std::tuple<std::size_t, int, std::size_t> best{};
    for (std::size_t r : col_rows[col]) {
      const auto& row = rows[r];
      auto it = std::lower_bound(row.begin(), row.end(), col,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      std::tuple<std::size_t, int, std::size_t> key{row.size(), it->second.is_unit() ? 0 : 1, r};
      if (!found || key < best) {
        best = key;
        prow = r;
        found = true;
      }
    }
    Row pivot = std::move(rows[prow]);
    rows[prow].clear();
    for (const auto& [c, v] : pivot) {
      std::size_t old = col_rows[c].size();
      col_rows[c].erase(prow);
      touch(c, old);
    }
    const Rational pivot_value =
        std::lower_bound(pivot.begin(), pivot.end(), col, [](const auto& e, std::size_t c) { return e.first < c; })
            ->second;
    std::vector<std::size_t> others(col_rows[col].begin(), col_rows[col].end());
    for (std::size_t r : others) {
      auto& row = rows[r];
      auto it = std::lower_bound(row.begin(), row.end(), col,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      Rational factor = it->second / pivot_value;
      gained.clear();
      lost.clear();
      axpy_row(row, pivot, factor, gained, lost);
      for (std::size_t c : gained) {
        std::size_t old = col_rows[c].size();
        col_rows[c].insert(r);
        touch(c, old);
      }
      for (std::size_t c : lost) {
        std::size_t old = col_rows[c].size();
        col_rows[c].erase(r);
        touch(c, old);
      }
    }
    ++result;
  }
  return result;
}

SparseMatrix eliminate_pivot(const SparseMatrix& m, std::size_t row, std::size_t col) {
  if (row >= m.rows() || col >= m.cols()) throw std::invalid_argument("eliminate_pivot: index out of range");
  const Rational pivot = m.get(row, col);
  if (pivot.is_zero()) throw std::invalid_argument("eliminate_pivot: zero pivot");
  auto shrink = [](std::size_t i, std::size_t removed) { return i > removed ? i - 1 : i; };

  SparseMatrix out(m.rows() - 1, m.cols() - 1);
  const Rational inv = pivot.inverse();
  const auto& prow = m.row(row);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    const auto& cur = m.row(r);
    for (const auto& [c, v] : cur) {
      if (c != col) out.add(shrink(r, row), shrink(c, col), v);
    }
    auto it = cur.find(col);
    if (it == cur.end()) continue;
    const Rational factor = it->second * inv;
    for (const auto& [c, v] : prow) {
      if (c != col) out.add(shrink(r, row), shrink(c, col), -(factor * v));
    }
  }
  return out;
}

}  // namespace khbound
