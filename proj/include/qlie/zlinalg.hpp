// Exact integer linear algebra over arbitrary-precision integers.
//
// Matrices are stored column-sparse with dense semantics. Homomorphisms act
// on column vectors and relation subgroups are column lattices throughout.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlie {

using Integer = mpz_class;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse column: (row, value) pairs sorted by row, no stored zeros.
using SparseColumn = std::vector<std::pair<std::size_t, Integer>>;

namespace detail {

/// y += a*x on sparse columns.
inline void axpy(SparseColumn& y, const Integer& a, const SparseColumn& x) {
  if (a == 0 || x.empty()) return;
  SparseColumn out;
  out.reserve(y.size() + x.size());
  auto i = y.begin();
  auto j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->first < j->first)) {
      out.push_back(std::move(*i));
      ++i;
    } else if (i == y.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Integer v = i->second + a * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

inline const Integer* find_entry(const SparseColumn& c, std::size_t row) {
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, std::size_t r) { return e.first < r; });
  if (it == c.end() || it->first != row) return nullptr;
  return &it->second;
}

}  // namespace detail

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, 1);
    return m;
  }

  static Matrix diagonal(const std::vector<Integer>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) m.data_[i].emplace_back(i, d[i]);
    return m;
  }

  /// Row-major literal, e.g. Matrix::from_rows({{1, 2}, {3, 4}}).
  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionMismatch("ragged matrix literal");
      std::size_t j = 0;
      for (long v : row) {
        if (v != 0) m.data_[j].emplace_back(i, v);
        ++j;
      }
      ++i;
    }
    return m;
  }

  static Matrix from_dense(const std::vector<std::vector<Integer>>& a, std::size_t cols) {
    Matrix m(a.size(), cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i][j] != 0) m.data_[j].emplace_back(i, a[i][j]);
    return m;
  }

  static Matrix from_columns(std::size_t rows, std::vector<SparseColumn> cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, std::move(cols[j]));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer at(std::size_t r, std::size_t c) const {
    check_bounds(r, c);
    const Integer* e = detail::find_entry(data_[c], r);
    return e ? *e : Integer(0);
  }

  void set(std::size_t r, std::size_t c, const Integer& v) {
    check_bounds(r, c);
    auto& col = data_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, std::size_t x) { return e.first < x; });
    if (it != col.end() && it->first == r) {
      if (v == 0)
        col.erase(it);
      else
        it->second = v;
    } else if (v != 0) {
      col.insert(it, {r, v});
    }
  }

  void add_to(std::size_t r, std::size_t c, const Integer& v) {
    if (v == 0) return;
    set(r, c, at(r, c) + v);
  }

  const SparseColumn& column(std::size_t c) const {
    if (c >= cols_) throw std::out_of_range("matrix column index");
    return data_[c];
  }

  void set_column(std::size_t c, SparseColumn col) {
    if (c >= cols_) throw std::out_of_range("matrix column index");
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseColumn clean;
    for (auto& [r, v] : col) {
      if (r >= rows_) throw std::out_of_range("matrix row index");
      if (!clean.empty() && clean.back().first == r) {
        clean.back().second += v;
        if (clean.back().second == 0) clean.pop_back();
      } else if (v != 0) {
        clean.emplace_back(r, std::move(v));
      }
    }
    data_[c] = std::move(clean);
  }

  void append_column(SparseColumn col) {
    data_.emplace_back();
    ++cols_;
    set_column(cols_ - 1, std::move(col));
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : data_) n += c.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  Matrix transpose() const {
    std::vector<SparseColumn> t(rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : data_[j]) t[i].emplace_back(j, v);
    Matrix m(cols_, rows_);
    m.data_ = std::move(t);
    return m;
  }

  /// Dense row-major copy.
  std::vector<std::vector<Integer>> to_dense() const {
    std::vector<std::vector<Integer>> a(rows_, std::vector<Integer>(cols_));
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : data_[j]) a[i][j] = v;
    return a;
  }

  SparseColumn apply(const SparseColumn& x) const {
    SparseColumn y;
    for (const auto& [j, v] : x) {
      if (j >= cols_) throw DimensionMismatch("vector longer than matrix width");
      detail::axpy(y, v, data_[j]);
    }
    return y;
  }

  std::vector<Integer> apply(const std::vector<Integer>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("vector length != matrix cols");
    std::vector<Integer> y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j] == 0) continue;
      for (const auto& [i, v] : data_[j]) y[i] += v * x[j];
    }
    return y;
  }

  Matrix select_columns(std::size_t begin, std::size_t end) const {
    Matrix m(rows_, end - begin);
    for (std::size_t j = begin; j < end; ++j) m.data_[j - begin] = data_[j];
    return m;
  }

  Matrix select_rows(std::size_t begin, std::size_t end) const {
    Matrix m(end - begin, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : data_[j])
        if (i >= begin && i < end) m.data_[j].emplace_back(i - begin, v);
    return m;
  }

  static Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw DimensionMismatch("hconcat row mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a.cols_));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    std::vector<Integer> acc(a.rows_);
    std::vector<char> touched(a.rows_, 0);
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < b.cols_; ++j) {
      rows.clear();
      for (const auto& [k, bv] : b.data_[j]) {
        for (const auto& [i, av] : a.data_[k]) {
          if (!touched[i]) {
            touched[i] = 1;
            rows.push_back(i);
          }
          acc[i] += av * bv;
        }
      }
      std::sort(rows.begin(), rows.end());
      auto& out = m.data_[j];
      for (std::size_t i : rows) {
        if (acc[i] != 0) out.emplace_back(i, acc[i]);
        acc[i] = 0;
        touched[i] = 0;
      }
    }
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) { return a.combine(b, 1); }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a.combine(b, -1); }

  Matrix scaled(const Integer& s) const {
    Matrix m(rows_, cols_);
    if (s == 0) return m;
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : data_[j]) m.data_[j].emplace_back(i, v * s);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_bounds(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  }

  Matrix combine(const Matrix& b, int sign) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix m = *this;
    for (std::size_t j = 0; j < cols_; ++j) detail::axpy(m.data_[j], sign, b.data_[j]);
    return m;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseColumn> data_;
};

/// Isomorphism type of a finitely generated abelian group.
struct AbelianStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // each > 1, each divides the next

  bool trivial() const { return free_rank == 0 && torsion.empty(); }

  Integer torsion_order() const {
    Integer o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
  }

  /// Builds from a Smith diagonal of a relation matrix with `rows` generators.
  static AbelianStructure from_diagonal(const std::vector<Integer>& diag, std::size_t rows) {
    AbelianStructure s;
    std::size_t nonzero = 0;
    for (const auto& d : diag) {
      if (d == 0) continue;
      ++nonzero;
      Integer a = abs(d);
      if (a != 1) s.torsion.push_back(a);
    }
    s.free_rank = rows - nonzero;
    return s;
  }

  std::string to_string() const {
    if (trivial()) return "0";
    std::string out;
    auto add = [&](const std::string& t) {
      if (!out.empty()) out += " + ";
      out += t;
    };
    if (free_rank == 1) add("Z");
    if (free_rank > 1) add("Z^" + std::to_string(free_rank));
    for (std::size_t i = 0; i < torsion.size();) {
      std::size_t j = i;
      while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
      std::string t = "Z/" + torsion[i].get_str();
      if (j - i > 1) t = "(" + t + ")^" + std::to_string(j - i);
      add(t);
      i = j;
    }
    return out;
  }

  friend bool operator==(const AbelianStructure& a, const AbelianStructure& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

inline std::ostream& operator<<(std::ostream& os, const AbelianStructure& s) { return os << s.to_string(); }

struct SmithForm {
  Matrix U;  // rows x rows, unimodular
  Matrix S;  // diagonal, same shape as input
  Matrix V;  // cols x cols, unimodular

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S.at(i, i));
    return d;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal())
      if (d != 0) ++r;
    return r;
  }
};

namespace detail {

using Dense = std::vector<std::vector<Integer>>;

inline int cmp_abs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline Dense dense_identity(std::size_t n) {
  Dense a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

/// In-place Smith reduction of a dense matrix, optionally accumulating
/// the row transform U, its inverse, the column transform V and its inverse,
/// so that U * A_in * V = A_out.
class SmithReducer {
 public:
  SmithReducer(Dense& a, std::size_t cols, bool track_u, bool track_uinv, bool track_v, bool track_vinv)
      : a_(a), rows_(a.size()), cols_(cols) {
    if (track_u) u_ = dense_identity(rows_);
    if (track_uinv) uinv_ = dense_identity(rows_);
    if (track_v) v_ = dense_identity(cols_);
    if (track_vinv) vinv_ = dense_identity(cols_);
  }

  void run() {
    std::size_t t = 0;
    while (t < rows_ && t < cols_) {
      if (!move_min_to(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < rows_; ++i) {
          if (a_[i][t] == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a_[i][t].get_mpz_t(), a_[t][t].get_mpz_t());
          if (q != 0) row_addmul(i, t, -q);
          if (a_[i][t] != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (a_[t][j] == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a_[t][j].get_mpz_t(), a_[t][t].get_mpz_t());
          if (q != 0) col_addmul(j, t, -q);
          if (a_[t][j] != 0) dirty = true;
        }
        if (dirty) {
          move_min_in_cross(t);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < rows_ && !fixed; ++i)
          for (std::size_t j = t + 1; j < cols_; ++j)
            if (a_[i][j] != 0 && !mpz_divisible_p(a_[i][j].get_mpz_t(), a_[t][t].get_mpz_t())) {
              row_addmul(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (a_[t][t] < 0) row_negate(t);
      ++t;
    }
  }

  Dense take_u() { return std::move(u_); }
  Dense take_uinv() { return std::move(uinv_); }
  Dense take_v() { return std::move(v_); }
  Dense take_vinv() { return std::move(vinv_); }

 private:
  bool move_min_to(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < rows_; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        const Integer& x = a_[i][j];
        if (x == 0) continue;
        if (!found || cmp_abs(x, a_[bi][bj]) < 0) {
          bi = i;
          bj = j;
          found = true;
          if (x == 1 || x == -1) goto done;
        }
      }
    }
  done:
    if (!found) return false;
    if (bi != t) row_swap(bi, t);
    if (bj != t) col_swap(bj, t);
    return true;
  }

  void move_min_in_cross(std::size_t t) {
    std::size_t best_i = t, best_j = t;
    const Integer* best = nullptr;
    for (std::size_t i = t + 1; i < rows_; ++i)
      if (a_[i][t] != 0 && (!best || cmp_abs(a_[i][t], *best) < 0)) {
        best = &a_[i][t];
        best_i = i;
        best_j = t;
      }
    for (std::size_t j = t + 1; j < cols_; ++j)
      if (a_[t][j] != 0 && (!best || cmp_abs(a_[t][j], *best) < 0)) {
        best = &a_[t][j];
        best_i = t;
        best_j = j;
      }
    if (best_i != t) row_swap(best_i, t);
    if (best_j != t) col_swap(best_j, t);
  }

  void row_swap(std::size_t i, std::size_t j) {
    std::swap(a_[i], a_[j]);
    if (!u_.empty()) std::swap(u_[i], u_[j]);
    if (!uinv_.empty())
      for (auto& row : uinv_) std::swap(row[i], row[j]);
  }

  // row dst += q * row src
  void row_addmul(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (a_[src][j] != 0) a_[dst][j] += q * a_[src][j];
    if (!u_.empty())
      for (std::size_t j = 0; j < rows_; ++j)
        if (u_[src][j] != 0) u_[dst][j] += q * u_[src][j];
    if (!uinv_.empty())
      for (auto& row : uinv_)
        if (row[dst] != 0) row[src] -= q * row[dst];
  }

  void row_negate(std::size_t i) {
    for (auto& x : a_[i]) x = -x;
    if (!u_.empty())
      for (auto& x : u_[i]) x = -x;
    if (!uinv_.empty())
      for (auto& row : uinv_) row[i] = -row[i];
  }

  void col_swap(std::size_t i, std::size_t j) {
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (!v_.empty())
      for (auto& row : v_) std::swap(row[i], row[j]);
    if (!vinv_.empty()) std::swap(vinv_[i], vinv_[j]);
  }

  // col dst += q * col src
  void col_addmul(std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& row : a_)
      if (row[src] != 0) row[dst] += q * row[src];
    if (!v_.empty())
      for (auto& row : v_)
        if (row[src] != 0) row[dst] += q * row[src];
    if (!vinv_.empty())
      for (std::size_t j = 0; j < cols_; ++j)
        if (vinv_[dst][j] != 0) vinv_[src][j] -= q * vinv_[dst][j];
  }

  Dense& a_;
  std::size_t rows_, cols_;
  Dense u_, uinv_, v_, vinv_;
};

inline Matrix to_matrix(const Dense& a, std::size_t cols) { return Matrix::from_dense(a, cols); }

/// Result of eliminating generators through relations with a unit coefficient.
///
/// Z^g / R is isomorphic to Z^s / residual, via `substitution` (s x g) in one
/// direction and the inclusion of the surviving generators in the other.
struct SparseReduction {
  std::vector<std::size_t> survivors;  // original generator indices, ascending
  Matrix substitution;                 // column j = generator j in survivor coordinates
  Matrix residual;                     // s x r', relations among survivors
};

/// Markowitz-style elimination on unit pivots. Only exact integer
/// operations are used; relations without a unit entry are left for the
/// dense Smith phase.
inline SparseReduction sparse_reduce(const Matrix& relations, bool want_substitution = true) {
  const std::size_t g = relations.rows();
  std::vector<SparseColumn> rel;
  rel.reserve(relations.cols());
  {
    std::set<SparseColumn> seen;
    for (std::size_t j = 0; j < relations.cols(); ++j) {
      SparseColumn c = relations.column(j);
      if (c.empty()) continue;
      if (c.front().second < 0)
        for (auto& e : c) e.second = -e.second;
      if (seen.insert(c).second) rel.push_back(std::move(c));
    }
  }
  const std::size_t r = rel.size();
  std::vector<std::vector<std::size_t>> occ(g);
  for (std::size_t j = 0; j < r; ++j)
    for (const auto& e : rel[j]) occ[e.first].push_back(j);

  std::vector<char> alive(r, 1);
  std::vector<char> eliminated(g, 0);
  std::set<std::pair<std::size_t, std::size_t>> queue;  // (length, relation)
  std::vector<std::size_t> queued_len(r, 0);
  auto has_unit = [](const SparseColumn& c) {
    for (const auto& e : c)
      if (e.second == 1 || e.second == -1) return true;
    return false;
  };
  auto enqueue = [&](std::size_t j) {
    if (queued_len[j]) queue.erase({queued_len[j], j});
    queued_len[j] = 0;
    if (!alive[j] || rel[j].empty() || !has_unit(rel[j])) return;
    queued_len[j] = rel[j].size();
    queue.insert({queued_len[j], j});
  };
  for (std::size_t j = 0; j < r; ++j) enqueue(j);

  std::vector<std::pair<std::size_t, SparseColumn>> record;  // eliminated gen, expression
  while (!queue.empty()) {
    auto [len, j] = *queue.begin();
    queue.erase(queue.begin());
    queued_len[j] = 0;
    const SparseColumn& piv = rel[j];
    // unit entry whose generator occurs least often
    std::size_t x = g;
    Integer c;
    std::size_t best_occ = 0;
    for (const auto& [gen, v] : piv) {
      if (v != 1 && v != -1) continue;
      if (x == g || occ[gen].size() < best_occ) {
        x = gen;
        c = v;
        best_occ = occ[gen].size();
      }
    }
    SparseColumn pivot = std::move(rel[j]);
    rel[j].clear();
    alive[j] = 0;
    eliminated[x] = 1;
    // x = -c * sum_{y != x} pivot_y * y
    if (want_substitution) {
      SparseColumn expr;
      for (const auto& [gen, v] : pivot)
        if (gen != x) expr.emplace_back(gen, -c * v);
      record.emplace_back(x, std::move(expr));
    }
    std::vector<std::size_t> users = std::move(occ[x]);
    occ[x].clear();
    for (std::size_t o : users) {
      if (!alive[o]) continue;
      const Integer* coef = find_entry(rel[o], x);
      if (!coef) continue;
      Integer factor = -(*coef) * c;
      std::vector<std::size_t> fresh;
      for (const auto& e : pivot)
        if (e.first != x && !find_entry(rel[o], e.first)) fresh.push_back(e.first);
      axpy(rel[o], factor, pivot);
      for (std::size_t y : fresh)
        if (find_entry(rel[o], y)) occ[y].push_back(o);
      if (rel[o].empty()) {
        if (queued_len[o]) queue.erase({queued_len[o], o});
        queued_len[o] = 0;
        alive[o] = 0;
      } else {
        enqueue(o);
      }
    }
  }

  SparseReduction out;
  std::vector<std::size_t> surv_index(g, g);
  for (std::size_t i = 0; i < g; ++i)
    if (!eliminated[i]) {
      surv_index[i] = out.survivors.size();
      out.survivors.push_back(i);
    }
  const std::size_t s = out.survivors.size();

  std::vector<SparseColumn> residual;
  {
    std::set<SparseColumn> seen;
    for (std::size_t j = 0; j < r; ++j) {
      if (!alive[j] || rel[j].empty()) continue;
      SparseColumn c;
      for (auto& [gen, v] : rel[j]) c.emplace_back(surv_index[gen], v);
      if (c.front().second < 0)
        for (auto& e : c) e.second = -e.second;
      if (seen.insert(c).second) residual.push_back(std::move(c));
    }
  }
  out.residual = Matrix::from_columns(s, std::move(residual));

  if (want_substitution) {
    std::vector<SparseColumn> expr(g);
    for (std::size_t i : out.survivors) expr[i] = {{surv_index[i], 1}};
    for (auto it = record.rbegin(); it != record.rend(); ++it) {
      SparseColumn e;
      for (const auto& [gen, v] : it->second) axpy(e, v, expr[gen]);
      expr[it->first] = std::move(e);
    }
    out.substitution = Matrix::from_columns(s, std::move(expr));
  }
  return out;
}

}  // namespace detail

/// Smith normal form with unimodular transforms: U * M * V = S.
inline SmithForm snf(const Matrix& m) {
  detail::Dense a = m.to_dense();
  detail::SmithReducer red(a, m.cols(), true, false, true, false);
  red.run();
  SmithForm f;
  f.U = detail::to_matrix(red.take_u(), m.rows());
  f.V = detail::to_matrix(red.take_v(), m.cols());
  f.S = detail::to_matrix(a, m.cols());
  return f;
}

/// Columns form a lattice basis of { x : M x = 0 }.
inline Matrix kernel_lattice(const Matrix& m) {
  SmithForm f = snf(m);
  std::size_t r = f.rank();
  return f.V.select_columns(r, m.cols());
}

/// Structure of Z^rows / (column lattice of M).
inline AbelianStructure cokernel_structure(const Matrix& m) {
  detail::SparseReduction red = detail::sparse_reduce(m, false);
  detail::Dense a = red.residual.to_dense();
  detail::SmithReducer sr(a, red.residual.cols(), false, false, false, false);
  sr.run();
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(a.size(), red.residual.cols()); ++i) diag.push_back(a[i][i]);
  return AbelianStructure::from_diagonal(diag, red.survivors.size());
}

/// Some x with M x = v, or nothing when v is outside the column lattice.
inline std::optional<std::vector<Integer>> lattice_member(const Matrix& m, const std::vector<Integer>& v) {
  if (v.size() != m.rows()) throw DimensionMismatch("lattice_member: vector length != rows");
  SmithForm f = snf(m);
  std::vector<Integer> uv = f.U.apply(v);
  std::vector<Integer> y(m.cols());
  auto diag = f.diagonal();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Integer d = i < diag.size() ? diag[i] : Integer(0);
    if (d == 0) {
      if (uv[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(uv[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    mpz_divexact(y[i].get_mpz_t(), uv[i].get_mpz_t(), d.get_mpz_t());
  }
  return f.V.apply(y);
}

/// A basis (linearly independent columns) of the lattice spanned by the columns of g.
inline Matrix lattice_basis(const Matrix& g) {
  detail::Dense a = g.to_dense();
  detail::SmithReducer sr(a, g.cols(), false, true, false, false);
  sr.run();
  detail::Dense uinv = sr.take_uinv();
  std::vector<SparseColumn> cols;
  for (std::size_t i = 0; i < std::min(a.size(), g.cols()); ++i) {
    if (a[i][i] == 0) break;
    SparseColumn c;
    for (std::size_t r = 0; r < g.rows(); ++r)
      if (uinv[r][i] != 0) c.emplace_back(r, uinv[r][i] * a[i][i]);
    cols.push_back(std::move(c));
  }
  return Matrix::from_columns(g.rows(), std::move(cols));
}

// ZMAT exchange format:
//   ZMAT 1 <rows> <cols> <nnz>
//   <row> <col> <value>     (nnz lines, 0-indexed, column-major order)
inline void write_zmat(std::ostream& os, const Matrix& m) {
  os << "ZMAT 1 " << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) os << i << ' ' << j << ' ' << v.get_str() << '\n';
}

inline Matrix read_zmat(std::istream& is) {
  std::string tag;
  int version = 0;
  long long rows = -1, cols = -1, nnz = -1;
  if (!(is >> tag >> version >> rows >> cols >> nnz) || tag != "ZMAT")
    throw FormatError("ZMAT: bad header");
  if (version != 1) throw FormatError("ZMAT: unsupported version " + std::to_string(version));
  if (rows < 0 || cols < 0 || nnz < 0) throw FormatError("ZMAT: negative size");
  std::vector<SparseColumn> data(static_cast<std::size_t>(cols));
  for (long long e = 0; e < nnz; ++e) {
    long long i = -1, j = -1;
    std::string val;
    if (!(is >> i >> j >> val)) throw FormatError("ZMAT: truncated entry list");
    if (i < 0 || j < 0 || i >= rows || j >= cols) throw FormatError("ZMAT: entry out of range");
    Integer v;
    if (v.set_str(val, 10) != 0) throw FormatError("ZMAT: bad integer '" + val + "'");
    data[static_cast<std::size_t>(j)].emplace_back(static_cast<std::size_t>(i), v);
  }
  for (auto& c : data) {
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t t = 1; t < c.size(); ++t)
      if (c[t].first == c[t - 1].first) throw FormatError("ZMAT: duplicate entry");
    for (const auto& e : c)
      if (e.second == 0) throw FormatError("ZMAT: explicit zero entry");
  }
  return Matrix::from_columns(static_cast<std::size_t>(rows), std::move(data));
}

}  // namespace qlie
