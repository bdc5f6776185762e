#include "sharp/linsys.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

namespace sharp::linsys {

namespace {

std::string element_label(const GroupEnumeration& group, std::size_t i) {
  if (group.order() > 20000) return "#" + std::to_string(i);
  return group.element(i).to_cycles();
}

bool prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t mod(std::int64_t v, std::uint64_t q) {
  const auto r = v % static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = r * a % q;
    a = a * a % q;
    e >>= 1;
  }
  return r;
}

/// Inverse of a unit modulo q by the extended Euclidean algorithm.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q) {
  std::int64_t r0 = static_cast<std::int64_t>(q), r1 = static_cast<std::int64_t>(a % q);
  std::int64_t s0 = 0, s1 = 1;
  while (r1) {
    const std::int64_t t = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - t * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - t * s1};
  }
  if (r0 != 1) throw Error("not a unit");
  return mod(s0, q);
}

SolveOutcome infeasible(std::string ring, std::string note) {
  SolveOutcome out;
  out.status = SolveStatus::infeasible;
  out.ring = std::move(ring);
  out.notes.push_back(std::move(note));
  return out;
}

// ---------------------------------------------------------------------------
// Integer column operations, checked int64 or GMP.

struct Overflow {};

struct CheckedOps {
  using T = std::int64_t;
  static T from(std::int64_t v) { return v; }
  static bool zero(T v) { return v == 0; }
  static bool less_abs(T a, T b) {
    if (a == INT64_MIN || b == INT64_MIN) throw Overflow{};
    return std::llabs(a) < std::llabs(b);
  }
  static T floor_div(T a, T b) {
    if (a == INT64_MIN && b == -1) throw Overflow{};
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static void sub_mul(T& a, T q, T b) {  // a -= q*b
    T prod;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &a)) throw Overflow{};
  }
  static T neg(T a) {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  static bool negative(T a) { return a < 0; }
  static bool divides(T d, T a) { return a % d == 0; }
  static T exact_div(T a, T d) { return a / d; }
  static mpq_class to_q(T a) { return mpq_class(mpz_class(static_cast<long>(a))); }
};

struct BigOps {
  using T = mpz_class;
  static T from(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
  static bool zero(const T& v) { return sgn(v) == 0; }
  static bool less_abs(const T& a, const T& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  static T floor_div(const T& a, const T& b) {
    T q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static void sub_mul(T& a, const T& q, const T& b) { mpz_submul(a.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t()); }
  static T neg(const T& a) { return -a; }
  static bool negative(const T& a) { return sgn(a) < 0; }
  static bool divides(const T& d, const T& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }
  static T exact_div(const T& a, const T& d) {
    T q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
  }
  static mpq_class to_q(const T& a) { return mpq_class(a); }
};

/// Hermite reduction by unimodular column operations, then forward substitution.
/// Returns nullopt when A x = b has no integral solution.
template <class Ops>
std::optional<std::vector<mpq_class>> hermite_solve(const ExactSystem& s, std::size_t& rank) {
  using T = typename Ops::T;
  const std::size_t rows = s.rows, cols = s.cols;
  std::vector<std::vector<T>> m(cols, std::vector<T>(rows)), u(cols, std::vector<T>(cols, Ops::from(0)));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) m[c][r] = Ops::from(s.at(r, c));
    u[c][c] = Ops::from(1);
  }
  auto sub_col = [&](std::size_t k, const T& q, std::size_t pc) {
    for (std::size_t r = 0; r < rows; ++r)
      if (!Ops::zero(m[pc][r])) Ops::sub_mul(m[k][r], q, m[pc][r]);
    for (std::size_t r = 0; r < cols; ++r)
      if (!Ops::zero(u[pc][r])) Ops::sub_mul(u[k][r], q, u[pc][r]);
  };

  std::vector<std::size_t> pivot_row;
  std::size_t pc = 0;
  for (std::size_t r = 0; r < rows && pc < cols; ++r) {
    bool has_pivot = false;
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t k = pc; k < cols; ++k)
        if (!Ops::zero(m[k][r]) && (!best || Ops::less_abs(m[k][r], m[*best][r]))) best = k;
      if (!best) break;
      has_pivot = true;
      std::swap(m[pc], m[*best]);
      std::swap(u[pc], u[*best]);
      bool remaining = false;
      for (std::size_t k = pc + 1; k < cols; ++k) {
        if (Ops::zero(m[k][r])) continue;
        const T q = Ops::floor_div(m[k][r], m[pc][r]);
        sub_col(k, q, pc);
        if (!Ops::zero(m[k][r])) remaining = true;
      }
      if (!remaining) break;
    }
    if (!has_pivot) continue;
    if (Ops::negative(m[pc][r])) {
      for (auto& v : m[pc]) v = Ops::neg(v);
      for (auto& v : u[pc]) v = Ops::neg(v);
    }
    pivot_row.push_back(r);
    ++pc;
  }
  rank = pc;

  std::vector<T> y(cols, Ops::from(0));
  std::size_t next = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    T residual = Ops::from(s.b[r]);
    const std::size_t known = next;
    for (std::size_t k = 0; k < known; ++k)
      if (!Ops::zero(m[k][r])) Ops::sub_mul(residual, y[k], m[k][r]);
    if (next < pivot_row.size() && pivot_row[next] == r) {
      if (!Ops::divides(m[next][r], residual)) return std::nullopt;
      y[next] = Ops::exact_div(residual, m[next][r]);
      ++next;
    } else if (!Ops::zero(residual)) {
      return std::nullopt;
    }
  }
  std::vector<T> x(cols, Ops::from(0));
  for (std::size_t k = 0; k < rank; ++k) {
    if (Ops::zero(y[k])) continue;
    for (std::size_t c = 0; c < cols; ++c)
      if (!Ops::zero(u[k][c])) Ops::sub_mul(x[c], Ops::neg(y[k]), u[k][c]);
  }
  std::vector<mpq_class> out;
  out.reserve(cols);
  for (const auto& v : x) out.push_back(Ops::to_q(v));
  return out;
}

// ---------------------------------------------------------------------------
// Exact phase-one simplex with Bland's rule.

/// Feasible point of {A x = b, lower <= x <= upper}, or nullopt.
std::optional<std::vector<mpq_class>> lp_feasible(const ExactSystem& s, const std::vector<mpz_class>& lower,
                                                  const std::vector<std::optional<mpz_class>>& upper) {
  const std::size_t n = s.cols;
  std::vector<std::size_t> bounded;
  for (std::size_t j = 0; j < n; ++j)
    if (upper[j]) {
      if (*upper[j] < lower[j]) return std::nullopt;
      bounded.push_back(j);
    }
  // variables: x' (n), slacks (bounded), artificials (rows)
  const std::size_t rows = s.rows + bounded.size();
  const std::size_t structural = n + bounded.size();
  const std::size_t width = structural + rows + 1;
  std::vector<std::vector<mpq_class>> t(rows + 1, std::vector<mpq_class>(width));
  for (std::size_t r = 0; r < s.rows; ++r) {
    mpq_class rhs(static_cast<long>(s.b[r]));
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = s.at(r, j);
      if (!v) continue;
      t[r][j] = static_cast<long>(v);
      rhs -= mpq_class(lower[j]) * static_cast<long>(v);
    }
    t[r][width - 1] = rhs;
  }
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    const std::size_t r = s.rows + k;
    t[r][bounded[k]] = 1;
    t[r][n + k] = 1;
    t[r][width - 1] = mpq_class(*upper[bounded[k]] - lower[bounded[k]]);
  }
  std::vector<std::size_t> basis(rows);
  auto& obj = t[rows];
  for (std::size_t r = 0; r < rows; ++r) {
    if (sgn(t[r][width - 1]) < 0)
      for (auto& v : t[r]) v = -v;
    t[r][structural + r] = 1;
    basis[r] = structural + r;
    for (std::size_t j = 0; j < structural; ++j) obj[j] -= t[r][j];
    obj[width - 1] -= t[r][width - 1];
  }

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (sgn(obj[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = rows;
    mpq_class best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (sgn(t[r][enter]) <= 0) continue;
      mpq_class ratio = t[r][width - 1] / t[r][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction; phase one is bounded below by 0
    const mpq_class piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == leave || sgn(t[r][enter]) == 0) continue;
      const mpq_class f = t[r][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (sgn(t[leave][j]) != 0) t[r][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (sgn(obj[width - 1]) != 0) return std::nullopt;

  std::vector<mpq_class> x(n);
  for (std::size_t r = 0; r < rows; ++r)
    if (basis[r] < n) x[basis[r]] = t[r][width - 1];
  for (std::size_t j = 0; j < n; ++j) x[j] += lower[j];
  return x;
}

struct BranchState {
  const ExactSystem& system;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

std::optional<std::vector<mpq_class>> branch(BranchState& st, std::vector<mpz_class>& lower,
                                             std::vector<std::optional<mpz_class>>& upper) {
  if (st.nodes >= st.budget) {
    st.exhausted = true;
    return std::nullopt;
  }
  ++st.nodes;
  auto x = lp_feasible(st.system, lower, upper);
  if (!x) return std::nullopt;
  std::size_t j = 0;
  while (j < x->size() && (*x)[j].get_den() == 1) ++j;
  if (j == x->size()) return x;

  mpz_class floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), (*x)[j].get_num_mpz_t(), (*x)[j].get_den_mpz_t());
  const auto saved_upper = upper[j];
  const auto saved_lower = lower[j];
  upper[j] = floor_value;
  if (auto found = branch(st, lower, upper)) return found;
  upper[j] = saved_upper;
  if (st.exhausted) return std::nullopt;
  lower[j] = floor_value + 1;
  auto found = branch(st, lower, upper);
  lower[j] = saved_lower;
  return found;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::solvable: return "solvable";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unknown_budget: return "unknown (budget)";
  }
  return "?";
}

ExactSystem make_system(std::size_t rows, std::size_t cols, std::vector<std::int64_t> a,
                        std::vector<std::int64_t> b) {
  if (a.size() != rows * cols || b.size() != rows) throw Error("system dimensions do not match");
  ExactSystem s;
  s.rows = rows;
  s.cols = cols;
  s.a = std::move(a);
  s.b = std::move(b);
  for (std::size_t c = 0; c < cols; ++c) s.variable_labels.push_back("x" + std::to_string(c));
  for (std::size_t r = 0; r < rows; ++r) s.equation_labels.push_back("e" + std::to_string(r));
  return s;
}

std::string ExactSystem::export_text() const {
  std::ostringstream out;
  out << rows << ' ' << cols << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out << at(r, c) << ' ';
    out << b[r] << '\n';
  }
  return out.str();
}

ExactSystem ExactSystem::restrict_columns(const std::vector<std::size_t>& keep) const {
  ExactSystem out;
  out.rows = rows;
  out.cols = keep.size();
  out.a.assign(rows * keep.size(), 0);
  out.b = b;
  out.equation_labels = equation_labels;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto c = keep.at(k);
    if (c >= cols) throw Error("column index out of range");
    for (std::size_t r = 0; r < rows; ++r) out.at(r, k) = at(r, c);
    if (!variable_elements.empty()) out.variable_elements.push_back(variable_elements[c]);
    if (!variable_labels.empty()) out.variable_labels.push_back(variable_labels[c]);
  }
  return out;
}

ExactSystem build_full_system(const GroupEnumeration& group) {
  const std::size_t n = group.degree();
  ExactSystem s;
  s.rows = n * n;
  s.cols = group.order();
  s.a.assign(s.rows * s.cols, 0);
  s.b.assign(s.rows, 1);
  for (std::size_t g = 0; g < s.cols; ++g) {
    auto img = group.images(g);
    for (std::size_t i = 0; i < n; ++i) s.at(i * n + img[i], g) = 1;
    s.variable_elements.push_back(g);
    s.variable_labels.push_back(element_label(group, g));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.equation_labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return s;
}

ExactSystem build_H_system(const GroupEnumeration& group, const GroupEnumeration& subgroup) {
  if (subgroup.degree() != group.degree()) throw Error("subgroup acts on a different domain");
  const std::size_t n = group.degree();
  const auto orbits = orbits_on_pairs(subgroup);
  const auto classes = conjugation_reps(group, subgroup);

  ExactSystem s;
  s.rows = orbits.count();
  s.cols = classes.representatives.size();
  s.a.assign(s.rows * s.cols, 0);
  for (auto size : orbits.sizes) s.b.push_back(static_cast<std::int64_t>(size));
  for (auto rep : orbits.representatives)
    s.equation_labels.push_back("orbit of (" + std::to_string(rep / n) + "," + std::to_string(rep % n) + ")");

  auto column = [&](std::size_t g) {
    std::vector<std::int64_t> col(s.rows, 0);
    auto img = group.images(g);
    for (std::size_t w = 0; w < n; ++w) ++col[orbits.orbit_of[w * n + img[w]]];
    return col;
  };
  for (std::size_t c = 0; c < s.cols; ++c) {
    const auto rep = classes.representatives[c];
    const auto col = column(rep);
    for (std::size_t r = 0; r < s.rows; ++r) s.at(r, c) = col[r];
    s.variable_elements.push_back(rep);
    s.variable_labels.push_back(element_label(group, rep));
  }
  // coefficients must not depend on the class representative
  std::vector<unsigned> sampled(s.cols, 0);
  for (std::size_t g = 0; g < group.order(); ++g) {
    const auto c = classes.class_of[g];
    if (sampled[c] >= 3) continue;
    ++sampled[c];
    const auto col = column(g);
    for (std::size_t r = 0; r < s.rows; ++r)
      if (col[r] != s.at(r, c))
        throw Error("coefficient of orbit " + std::to_string(r) + " varies within a conjugation class");
  }
  return s;
}

bool witness_satisfies(const ExactSystem& system, const std::vector<mpq_class>& x, std::uint64_t modulus) {
  if (x.size() != system.cols) return false;
  if (modulus) {
    for (const auto& v : x)
      if (v.get_den() != 1) return false;
    const mpz_class q(static_cast<unsigned long>(modulus));
    for (std::size_t r = 0; r < system.rows; ++r) {
      mpz_class sum = -static_cast<long>(system.b[r]);
      for (std::size_t c = 0; c < system.cols; ++c)
        if (system.at(r, c)) sum += x[c].get_num() * static_cast<long>(system.at(r, c));
      if (!mpz_divisible_p(sum.get_mpz_t(), q.get_mpz_t())) return false;
    }
    return true;
  }
  for (std::size_t r = 0; r < system.rows; ++r) {
    mpq_class sum = 0;
    for (std::size_t c = 0; c < system.cols; ++c)
      if (system.at(r, c)) sum += x[c] * static_cast<long>(system.at(r, c));
    if (sum != static_cast<long>(system.b[r])) return false;
  }
  return true;
}

SolveOutcome solve_mod_p(const ExactSystem& system, std::uint64_t p) {
  if (!prime(p) || p >= (std::uint64_t{1} << 31)) throw Error("solve_mod_p needs a prime below 2^31");
  const std::size_t rows = system.rows, cols = system.cols;
  struct BasisVector {
    std::size_t pivot;
    std::vector<std::uint64_t> vec;
    std::vector<std::uint64_t> comb;
  };
  std::vector<BasisVector> basis;
  std::vector<std::uint64_t> residual(rows), x(cols, 0);
  for (std::size_t r = 0; r < rows; ++r) residual[r] = mod(system.b[r], p);
  auto is_zero = [](const std::vector<std::uint64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](auto e) { return e == 0; });
  };
  auto axpy = [p](std::vector<std::uint64_t>& y, std::uint64_t f, const std::vector<std::uint64_t>& v) {
    const std::uint64_t neg = (p - f) % p;  // y -= f v
    for (std::size_t i = 0; i < y.size(); ++i)
      if (v[i]) y[i] = (y[i] + neg * v[i]) % p;
  };

  SolveOutcome out;
  out.ring = "F_" + std::to_string(p);
  std::size_t scanned = 0;
  bool in_span = is_zero(residual);
  for (std::size_t c = 0; c < cols && !in_span; ++c) {
    ++scanned;
    std::vector<std::uint64_t> v(rows), comb(cols, 0);
    for (std::size_t r = 0; r < rows; ++r) v[r] = mod(system.at(r, c), p);
    comb[c] = 1;
    for (const auto& e : basis)
      if (const auto f = v[e.pivot]) {
        axpy(v, f, e.vec);
        axpy(comb, f, e.comb);
      }
    const auto it = std::find_if(v.begin(), v.end(), [](auto e) { return e != 0; });
    if (it == v.end()) continue;
    const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    const std::uint64_t inv = inverse_mod(v[pivot], p);
    for (auto& e : v) e = e * inv % p;
    for (auto& e : comb) e = e * inv % p;
    for (auto& e : basis)
      if (const auto f = e.vec[pivot]) {
        axpy(e.vec, f, v);
        axpy(e.comb, f, comb);
      }
    if (const auto f = residual[pivot]) {
      axpy(residual, f, v);
      for (std::size_t i = 0; i < cols; ++i)
        if (comb[i]) x[i] = (x[i] + f * comb[i]) % p;  // residual = b - A x
    }
    basis.push_back({pivot, std::move(v), std::move(comb)});
    in_span = is_zero(residual);
  }
  out.notes.push_back("rank " + std::to_string(basis.size()) + " after " + std::to_string(scanned) + " of " +
                      std::to_string(cols) + " columns");
  if (!in_span) {
    out.status = SolveStatus::infeasible;
    return out;
  }
  out.status = SolveStatus::solvable;
  for (auto v : x) out.witness.emplace_back(mpz_class(static_cast<unsigned long>(v)));
  if (!witness_satisfies(system, out.witness, p)) throw Error("F_p witness fails substitution");
  return out;
}

SolveOutcome solve_mod_prime_power(const ExactSystem& system, std::uint64_t p, unsigned m) {
  if (!prime(p) || m == 0) throw Error("solve_mod_prime_power needs a prime and m >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q >= (std::uint64_t{1} << 31)) throw Error("p^m must stay below 2^31");
  }
  auto valuation = [&](std::uint64_t v) {
    unsigned k = 0;
    while (k < m && v % p == 0) {
      v /= p;
      ++k;
    }
    return k;  // m stands for zero
  };
  const std::size_t rows = system.rows, cols = system.cols;
  std::vector<std::vector<std::uint64_t>> mat(rows, std::vector<std::uint64_t>(cols));
  std::vector<std::uint64_t> rhs(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) mat[r][c] = mod(system.at(r, c), q);
    rhs[r] = mod(system.b[r], q);
  }
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<unsigned> pivot_val;

  std::size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    unsigned best = m;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = k; r < rows && best > 0; ++r)
      for (std::size_t c = k; c < cols; ++c) {
        if (!mat[r][c]) continue;
        const auto v = valuation(mat[r][c]);
        if (v < best) {
          best = v;
          br = r;
          bc = c;
          if (v == 0) break;
        }
      }
    if (best == m) break;
    std::swap(mat[k], mat[br]);
    std::swap(rhs[k], rhs[br]);
    if (bc != k) {
      for (auto& row : mat) std::swap(row[k], row[bc]);
      std::swap(perm[k], perm[bc]);
    }
    // scale the pivot to exactly p^best
    const std::uint64_t pb = pow_mod(p, best, q + 1);
    const std::uint64_t unit = inverse_mod(mat[k][k] / pb, q);
    for (auto& e : mat[k]) e = e * unit % q;
    rhs[k] = rhs[k] * unit % q;
    for (std::size_t r = k + 1; r < rows; ++r) {
      if (!mat[r][k]) continue;
      const std::uint64_t f = mat[r][k] / pb;  // exact: valuation >= best
      for (std::size_t c = k; c < cols; ++c)
        if (mat[k][c]) mat[r][c] = (mat[r][c] + (q - f) * mat[k][c]) % q;
      rhs[r] = (rhs[r] + (q - f) * rhs[k]) % q;
    }
    pivot_val.push_back(best);
  }
  const std::size_t rank = k;
  SolveOutcome out;
  out.ring = "Z/" + std::to_string(q);
  out.notes.push_back("rank " + std::to_string(rank) + " over Z/" + std::to_string(q));
  for (std::size_t r = rank; r < rows; ++r)
    if (rhs[r]) return infeasible(out.ring, "inconsistent equation " + std::to_string(r));
  for (std::size_t r = 0; r < rank; ++r)
    if (valuation(rhs[r]) < pivot_val[r]) return infeasible(out.ring, "pivot does not divide the right side");

  std::vector<std::uint64_t> y(cols, 0);
  for (std::size_t r = rank; r-- > 0;) {
    std::uint64_t s = rhs[r];
    for (std::size_t c = r + 1; c < rank; ++c)
      if (mat[r][c]) s = (s + (q - mat[r][c]) * y[c]) % q;
    y[r] = s / pow_mod(p, pivot_val[r], q + 1);
  }
  std::vector<std::uint64_t> x(cols, 0);
  for (std::size_t c = 0; c < cols; ++c) x[perm[c]] = y[c];
  out.status = SolveStatus::solvable;
  for (auto v : x) out.witness.emplace_back(mpz_class(static_cast<unsigned long>(v)));
  if (!witness_satisfies(system, out.witness, q)) throw Error("Z/p^m witness fails substitution");
  return out;
}

SolveOutcome solve_rational(const ExactSystem& system) {
  const std::size_t rows = system.rows, cols = system.cols;
  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c)
      if (system.at(r, c)) m[r][c] = static_cast<long>(system.at(r, c));
    m[r][cols] = static_cast<long>(system.b[r]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pr = rank;
    while (pr < rows && sgn(m[pr][c]) == 0) ++pr;
    if (pr == rows) continue;
    std::swap(m[rank], m[pr]);
    const mpq_class piv = m[rank][c];
    for (std::size_t j = c; j <= cols; ++j)
      if (sgn(m[rank][j])) m[rank][j] /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t j = c; j <= cols; ++j)
        if (sgn(m[rank][j])) m[r][j] -= f * m[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (sgn(m[r][cols])) return infeasible("Q", "inconsistent after elimination, rank " + std::to_string(rank));
  SolveOutcome out;
  out.ring = "Q";
  out.status = SolveStatus::solvable;
  out.witness.assign(cols, 0);
  for (std::size_t r = 0; r < rank; ++r) out.witness[pivot_col[r]] = m[r][cols];
  out.notes.push_back("rank " + std::to_string(rank));
  if (!witness_satisfies(system, out.witness)) throw Error("rational witness fails substitution");
  return out;
}

SolveOutcome solve_integer(const ExactSystem& system, const IntegerOptions& options) {
  if (options.modular_precheck)
    for (std::uint64_t p : {2u, 3u, 5u, 7u})
      if (solve_mod_p(system, p).status == SolveStatus::infeasible)
        return infeasible("Z", "infeasible over F_" + std::to_string(p) + ", hence over Z");

  SolveOutcome out;
  out.ring = "Z";
  std::size_t rank = 0;
  std::optional<std::vector<mpq_class>> x;
  try {
    x = hermite_solve<CheckedOps>(system, rank);
    out.notes.push_back("Hermite reduction in 64-bit arithmetic");
  } catch (const Overflow&) {
    x = hermite_solve<BigOps>(system, rank);
    out.notes.push_back("Hermite reduction in arbitrary precision");
  }
  out.notes.push_back("rank " + std::to_string(rank));
  if (!x) {
    out.status = SolveStatus::infeasible;
    return out;
  }
  out.status = SolveStatus::solvable;
  out.witness = std::move(*x);
  if (!witness_satisfies(system, out.witness)) throw Error("integer witness fails substitution");
  return out;
}

SolveOutcome solve_nonneg_integer(const ExactSystem& system, std::uint64_t budget) {
  if (solve_integer(system).status == SolveStatus::infeasible)
    return infeasible("Z>=0", "no integral solution at all");
  BranchState st{system, budget};
  std::vector<mpz_class> lower(system.cols, 0);
  std::vector<std::optional<mpz_class>> upper(system.cols);
  auto x = branch(st, lower, upper);
  SolveOutcome out;
  out.ring = "Z>=0";
  out.notes.push_back(std::to_string(st.nodes) + " branch-and-bound nodes");
  if (x) {
    out.status = SolveStatus::solvable;
    out.witness = std::move(*x);
    if (!witness_satisfies(system, out.witness) ||
        std::any_of(out.witness.begin(), out.witness.end(), [](const mpq_class& v) { return sgn(v) < 0; }))
      throw Error("non-negative witness fails substitution");
  } else {
    out.status = st.exhausted ? SolveStatus::unknown_budget : SolveStatus::infeasible;
  }
  return out;
}

SolveOutcome random_restriction_probe(const ExactSystem& system, const ProbeOptions& options) {
  if (options.keep > system.cols) throw Error("probe keeps more columns than the system has");
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> columns(system.cols);
  std::iota(columns.begin(), columns.end(), std::size_t{0});
  SolveOutcome out;
  out.ring = options.nonnegative ? "Z>=0" : "Z";
  out.status = SolveStatus::unknown_budget;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    std::shuffle(columns.begin(), columns.end(), rng);
    std::vector<std::size_t> keep(columns.begin(), columns.begin() + static_cast<std::ptrdiff_t>(options.keep));
    std::sort(keep.begin(), keep.end());
    const auto restricted = system.restrict_columns(keep);
    const auto result = options.nonnegative ? solve_nonneg_integer(restricted) : solve_integer(restricted);
    if (result.status != SolveStatus::solvable) continue;
    out.witness.assign(system.cols, 0);
    for (std::size_t k = 0; k < keep.size(); ++k) out.witness[keep[k]] = result.witness[k];
    if (!witness_satisfies(system, out.witness)) throw Error("probe witness fails substitution");
    out.status = SolveStatus::solvable;
    out.notes.push_back("witness in trial " + std::to_string(trial + 1) + " of " + std::to_string(options.trials));
    return out;
  }
  out.notes.push_back("no witness in " + std::to_string(options.trials) + " trials keeping " +
                      std::to_string(options.keep) + " columns");
  return out;
}

ExactSystem restrict_to_fpf(const ExactSystem& system, const GroupEnumeration& group, bool pin_identity) {
  if (system.variable_elements.size() != system.cols) throw Error("system has no element labels");
  std::vector<std::size_t> keep;
  std::optional<std::size_t> identity;
  for (std::size_t c = 0; c < system.cols; ++c) {
    const auto img = group.images(system.variable_elements[c]);
    bool is_identity = true;
    for (std::size_t x = 0; x < img.size(); ++x) is_identity = is_identity && img[x] == x;
    if (is_identity) {
      identity = c;
      if (!pin_identity) keep.push_back(c);
    } else if (is_fixed_point_free(img)) {
      keep.push_back(c);
    }
  }
  auto out = system.restrict_columns(keep);
  if (pin_identity) {
    if (!identity) throw Error("identity is not among the variables");
    for (std::size_t r = 0; r < out.rows; ++r) out.b[r] -= system.at(r, *identity);
  }
  return out;
}

LemmaDownReport lemma_down_check(const GroupEnumeration& group, const GroupEnumeration& u,
                                 const GroupEnumeration& v) {
  for (std::size_t i = 0; i < u.order(); ++i)
    if (!v.index_of(u.images(i))) throw Error("U is not contained in V");
  LemmaDownReport report;
  report.u_solvable = solve_integer(build_H_system(group, u)).status == SolveStatus::solvable;
  report.v_solvable = solve_integer(build_H_system(group, v)).status == SolveStatus::solvable;
  report.holds = !report.u_solvable || report.v_solvable;
  return report;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

LocalGlobalReport local_global_check(const GroupEnumeration& group,
                                     const std::map<std::uint64_t, GroupEnumeration>& subgroups,
                                     unsigned max_power) {
  LocalGlobalReport report;
  const auto full = build_full_system(group);
  report.full_integral = solve_integer(full).status == SolveStatus::solvable;
  bool all_local = true;
  for (auto p : prime_divisors(group.order())) {
    const auto it = subgroups.find(p);
    if (it == subgroups.end()) throw Error("no p'-subgroup supplied for p = " + std::to_string(p));
    const auto& h = it->second;
    if (h.order() % p == 0)
      throw Error("subgroup of order " + std::to_string(h.order()) + " is not a " + std::to_string(p) + "'-group");
    PrimeLocalReport local;
    local.p = p;
    local.subgroup_order = h.order();
    const auto hsys = build_H_system(group, h);
    local.h_integral = solve_integer(hsys).status == SolveStatus::solvable;
    all_local = all_local && local.h_integral;
    for (unsigned m = 1; m <= max_power; ++m) {
      const bool hm = solve_mod_prime_power(hsys, p, m).status == SolveStatus::solvable;
      const bool fm = solve_mod_prime_power(full, p, m).status == SolveStatus::solvable;
      local.h_mod.push_back(hm);
      local.full_mod.push_back(fm);
      if (hm && !fm) local.lifting_holds = false;
    }
    report.lifting_holds = report.lifting_holds && local.lifting_holds;
    report.primes.push_back(std::move(local));
  }
  report.equivalence_holds = report.full_integral == all_local;
  return report;
}

SolveOutcome rational_via_whole_group(const GroupEnumeration& group) {
  auto out = solve_rational(build_H_system(group, group));
  out.notes.push_back("decided on the system collapsed by the whole group");
  return out;
}

}  // namespace sharp::linsys
