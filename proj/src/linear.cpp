#include <algorithm>
#include <utility>
#include <vector>

#include "mkit/constructions.hpp"
#include "mkit/errors.hpp"

namespace mkit {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct RationalOps {
  using Elem = mpq_class;
  Elem zero() const { return Elem(0); }
  bool is_zero(const Elem& e) const { return e == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem from(const mpq_class& q) const { return q; }
};

struct PrimeOps {
  long p;
  using Elem = long;
  Elem zero() const { return 0; }
  bool is_zero(Elem e) const { return e == 0; }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return ((a - b) % p + p) % p; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return (p - a) % p; }
  Elem inv(Elem a) const {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
      long q = r / nr;
      t = std::exchange(nt, t - q * nt);
      r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw DomainError("element not invertible mod " + std::to_string(p));
    return ((t % p) + p) % p;
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem from(const mpq_class& q) const {
    long den = static_cast<long>(mpz_fdiv_ui(q.get_den().get_mpz_t(), p));
    if (den == 0)
      throw DomainError("matrix entry has a denominator divisible by " + std::to_string(p));
    long num = static_cast<long>(mpz_fdiv_ui(q.get_num().get_mpz_t(), p));
    return div(num, den);
  }
};

template <class Ops>
using Col = std::vector<typename Ops::Elem>;

// Incremental column basis: reduce against current pivots, keep if nonzero.
template <class Ops>
struct ColumnBasis {
  const Ops& ops;
  std::vector<Col<Ops>> pivots;
  std::vector<int> pivot_rows;

  explicit ColumnBasis(const Ops& o) : ops(o) {}

  bool insert(Col<Ops> v) {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      int pr = pivot_rows[i];
      if (ops.is_zero(v[pr])) continue;
      auto factor = ops.div(v[pr], pivots[i][pr]);
      for (std::size_t r = 0; r < v.size(); ++r)
        v[r] = ops.sub(v[r], ops.mul(factor, pivots[i][r]));
    }
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (!ops.is_zero(v[r])) {
        pivot_rows.push_back(static_cast<int>(r));
        pivots.push_back(std::move(v));
        return true;
      }
    }
    return false;
  }

  int dim() const { return static_cast<int>(pivots.size()); }
};

// Basis of { x : M x = 0 } for a column-major matrix.
template <class Ops>
std::vector<Col<Ops>> nullspace(const Ops& ops, const std::vector<Col<Ops>>& cols) {
  int m = static_cast<int>(cols.size());
  if (m == 0) return {};
  int d = static_cast<int>(cols[0].size());

  // Row-reduce a row-major copy, remembering pivot columns.
  std::vector<std::vector<typename Ops::Elem>> a(d, std::vector<typename Ops::Elem>(m, ops.zero()));
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < d; ++r) a[r][c] = cols[c][r];

  std::vector<int> pivot_col_of_row(d, -1);
  std::vector<char> is_pivot(m, 0);
  int row = 0;
  for (int c = 0; c < m && row < d; ++c) {
    int sel = -1;
    for (int r = row; r < d; ++r)
      if (!ops.is_zero(a[r][c])) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[row]);
    auto inv = ops.div(ops.from(1), a[row][c]);
    for (int cc = 0; cc < m; ++cc) a[row][cc] = ops.mul(a[row][cc], inv);
    for (int r = 0; r < d; ++r) {
      if (r == row || ops.is_zero(a[r][c])) continue;
      auto f = a[r][c];
      for (int cc = 0; cc < m; ++cc) a[r][cc] = ops.sub(a[r][cc], ops.mul(f, a[row][cc]));
    }
    pivot_col_of_row[row] = c;
    is_pivot[c] = 1;
    ++row;
  }

  std::vector<Col<Ops>> out;
  for (int c = 0; c < m; ++c) {
    if (is_pivot[c]) continue;
    Col<Ops> x(m, ops.zero());
    x[c] = ops.from(1);
    for (int r = 0; r < row; ++r)
      x[pivot_col_of_row[r]] = ops.neg(a[r][c]);
    out.push_back(std::move(x));
  }
  return out;
}

template <class Ops>
class LinearOracle final : public RankOracle {
 public:
  LinearOracle(Ops ops, std::vector<Col<Ops>> cols)
      : ops_(std::move(ops)), cols_(std::move(cols)) {}

  int rank(Mask s) const override {
    ColumnBasis<Ops> basis(ops_);
    for_each_element(s, [&](int c) { basis.insert(cols_[c]); });
    return basis.dim();
  }

  const std::vector<Col<Ops>>& cols() const { return cols_; }
  const Ops& ops() const { return ops_; }

 private:
  Ops ops_;
  std::vector<Col<Ops>> cols_;
};

template <class Ops>
std::vector<Col<Ops>> convert_columns(const Ops& ops, const LinearMatroidSpec& spec) {
  std::vector<Col<Ops>> cols(spec.cols());
  for (int c = 0; c < spec.cols(); ++c) {
    cols[c].reserve(spec.rows());
    for (int r = 0; r < spec.rows(); ++r) cols[c].push_back(ops.from(spec.matrix[r][c]));
  }
  return cols;
}

template <class Ops>
std::vector<Col<Ops>> span_basis(const Ops& ops, const std::vector<Col<Ops>>& cols,
                                 Mask family) {
  ColumnBasis<Ops> basis(ops);
  for_each_element(family, [&](int c) { basis.insert(cols[c]); });
  return basis.pivots;
}

template <class Ops>
std::vector<Col<Ops>> intersect_spans(const Ops& ops, const std::vector<Col<Ops>>& u,
                                      const std::vector<Col<Ops>>& w) {
  if (u.empty() || w.empty()) return {};
  std::vector<Col<Ops>> stacked = u;
  for (const auto& col : w) {
    Col<Ops> negated;
    negated.reserve(col.size());
    for (const auto& e : col) negated.push_back(ops.neg(e));
    stacked.push_back(std::move(negated));
  }
  auto kernel = nullspace(ops, stacked);

  ColumnBasis<Ops> basis(ops);
  int d = static_cast<int>(u[0].size());
  for (const auto& x : kernel) {
    Col<Ops> v(d, ops.zero());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (int r = 0; r < d; ++r) v[r] = ops.add(v[r], ops.mul(x[i], u[i][r]));
    basis.insert(std::move(v));
  }
  return basis.pivots;
}

template <class Ops>
int intersection_dim(const Ops& ops, const LinearMatroidSpec& spec,
                     const std::vector<Mask>& families) {
  auto cols = convert_columns(ops, spec);
  auto acc = span_basis(ops, cols, families[0]);
  for (std::size_t i = 1; i < families.size() && !acc.empty(); ++i)
    acc = intersect_spans(ops, acc, span_basis(ops, cols, families[i]));
  return static_cast<int>(acc.size());
}

}  // namespace

void LinearMatroidSpec::validate() const {
  if (prime != 0 && !is_prime(prime))
    throw DomainError("field characteristic must be 0 or a prime");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != cols())
      throw DomainError("matrix rows must all have the same length");
  if (cols() > 64) throw DomainError("matrix exceeds 64 columns");
  if (!labels.empty() && static_cast<int>(labels.size()) != cols())
    throw DomainError("linear matroid label count must match the column count");
}

Matroid linear_matroid(LinearMatroidSpec spec) {
  spec.validate();
  auto labels = spec.labels;
  if (labels.empty()) {
    for (int c = 0; c < spec.cols(); ++c) labels.push_back("v" + std::to_string(c + 1));
  }
  auto ground = make_ground(std::move(labels));
  if (spec.prime == 0) {
    RationalOps ops;
    return Matroid(ground, std::make_shared<LinearOracle<RationalOps>>(
                               ops, convert_columns(ops, spec)));
  }
  PrimeOps ops{spec.prime};
  return Matroid(ground, std::make_shared<LinearOracle<PrimeOps>>(
                             ops, convert_columns(ops, spec)));
}

int subspace_intersection_dim(const LinearMatroidSpec& spec,
                              const std::vector<Mask>& families) {
  spec.validate();
  if (families.empty())
    throw DomainError("subspace intersection needs at least one family");
  Mask all = all_of(spec.cols());
  for (Mask f : families)
    if (f & ~all) throw DomainError("family leaves the column range");
  if (spec.prime == 0) return intersection_dim(RationalOps{}, spec, families);
  return intersection_dim(PrimeOps{spec.prime}, spec, families);
}

}  // namespace mkit
