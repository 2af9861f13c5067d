#include "lattice.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace cmdyn {
namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Column operations applied to A and mirrored into Q and Q^-1.
struct TrackedColumns {
  IntMatrix& a;
  IntMatrix& q;
  IntMatrix& q_inv;

  void add(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_col_multiple(dst, src, k);
    q.add_col_multiple(dst, src, k);
    q_inv.add_row_multiple(src, dst, -k);
  }
  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    a.swap_cols(i, j);
    q.swap_cols(i, j);
    q_inv.swap_rows(i, j);
  }
  void negate(std::size_t c) {
    a.negate_col(c);
    q.negate_col(c);
    q_inv.negate_row(c);
  }
};

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::append_row(std::span<const Integer> row) {
  if (row.size() != cols_) throw DomainError("row length does not match column count");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, a), at(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) at(dst, c) += k * at(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) at(r, dst) += k * at(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) at(r, c) = -at(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = -at(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

IntVector operator*(std::span<const Integer> v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw DomainError("vector/matrix dimension mismatch");
  IntVector out(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m.at(k, j);
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm out{{}, IntMatrix::identity(n), IntMatrix::identity(n)};
  TrackedColumns cols{a, out.transform, out.inverse_transform};

  // Smallest nonzero |entry| in the block a[t.., t..], optionally restricted
  // to row t and column t.
  auto find_pivot = [&](std::size_t t, bool cross_only) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (cross_only && i != t && j != t) continue;
        if (a.at(i, j) == 0) continue;
        if (!best || abs(a.at(i, j)) < abs(a.at(best->first, best->second))) best = {i, j};
      }
    return best;
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    auto pivot = find_pivot(t, false);
    if (!pivot) break;
    a.swap_rows(t, pivot->first);
    cols.swap(t, pivot->second);

    for (;;) {
      bool clear = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a.at(i, t) == 0) continue;
        a.add_row_multiple(i, t, -trunc_div(a.at(i, t), a.at(t, t)));
        if (a.at(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a.at(t, j) == 0) continue;
        cols.add(j, t, -trunc_div(a.at(t, j), a.at(t, t)));
        if (a.at(t, j) != 0) clear = false;
      }
      if (!clear) {
        auto next = find_pivot(t, true);
        a.swap_rows(t, next->first);
        cols.swap(t, next->second);
        continue;
      }
      // Divisibility: the pivot must divide the whole remaining block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), a.at(t, t).get_mpz_t())) {
            a.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a.at(t, t) < 0) cols.negate(t);
    out.invariants.push_back(a.at(t, t));
  }
  return out;
}

HermiteBasis::HermiteBasis(const IntMatrix& generators, std::vector<std::size_t> column_order) {
  IntMatrix a = generators;
  const std::size_t m = a.rows();
  std::size_t k = 0;
  for (std::size_t col : column_order) {
    if (k == m) break;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = k; i < m; ++i)
        if (a.at(i, col) != 0 && (!best || abs(a.at(i, col)) < abs(a.at(*best, col)))) best = i;
      if (!best) break;
      a.swap_rows(k, *best);
      bool clear = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (a.at(i, col) == 0) continue;
        a.add_row_multiple(i, k, -floor_div(a.at(i, col), a.at(k, col)));
        if (a.at(i, col) != 0) clear = false;
      }
      if (clear) break;
    }
    if (a.at(k, col) == 0) continue;
    if (a.at(k, col) < 0) a.negate_row(k);
    for (std::size_t i = 0; i < k; ++i)
      a.add_row_multiple(i, k, -floor_div(a.at(i, col), a.at(k, col)));
    pivots_.push_back(col);
    ++k;
  }
  basis_ = IntMatrix(0, a.cols());
  for (std::size_t r = 0; r < k; ++r) basis_.append_row(a.row(r));
}

IntVector HermiteBasis::reduce(IntVector v) const {
  if (v.size() != basis_.cols()) throw DomainError("vector length does not match lattice dimension");
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    const std::size_t col = pivots_[r];
    const Integer q = floor_div(v[col], basis_.at(r, col));
    if (q == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= q * basis_.at(r, c);
  }
  return v;
}

bool HermiteBasis::contains(std::span<const Integer> v) const {
  const IntVector r = reduce(IntVector(v.begin(), v.end()));
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

std::vector<std::size_t> reverse_column_order(std::size_t cols) {
  std::vector<std::size_t> order(cols);
  for (std::size_t i = 0; i < cols; ++i) order[i] = cols - 1 - i;
  return order;
}

}  // namespace cmdyn
