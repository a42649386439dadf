#pragma once

// Exact scalar arithmetic over Q and over the real cyclotomic extensions
// Q(theta) with theta = 2cos(pi/m).  Every geometric decision downstream
// (root positivity, cone membership, rank) reduces to exact sign tests here,
// so this file deliberately contains no floating point except for one-time
// numeric cross-checks at field construction.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace brickpoly {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sign_of(const Rat& r) { return r.sign(); }

inline std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

// ---------------------------------------------------------------------------
// Dense univariate polynomials, ascending coefficients.

namespace poly {

template <typename T>
void trim(std::vector<T>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <typename T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> r(a.size() + b.size() - 1, T(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division of integer polynomials, quotient known to be integral.
inline std::vector<Int> div_exact(std::vector<Int> a, const std::vector<Int>& b) {
  trim(a);
  std::vector<Int> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
  while (a.size() >= b.size() && !a.empty()) {
    Int c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("polynomial division not exact");
  return q;
}

template <typename T>
T eval(const std::vector<T>& p, const T& x) {
  T acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline double eval_d(const std::vector<Rat>& p, double x) {
  double acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + rat_to_double(p[i]);
  return acc;
}

}  // namespace poly

// Cyclotomic polynomial Phi_n over the integers, by repeated exact division.
inline const std::vector<Int>& cyclotomic(unsigned n) {
  static std::map<unsigned, std::vector<Int>> cache;
  static std::mutex mx;
  std::lock_guard<std::mutex> lock(mx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::function<const std::vector<Int>&(unsigned)> get = [&](unsigned k) -> const std::vector<Int>& {
    auto jt = cache.find(k);
    if (jt != cache.end()) return jt->second;
    std::vector<Int> num(k + 1, Int(0));
    num[0] = -1;
    num[k] = 1;  // z^k - 1
    for (unsigned d = 1; d < k; ++d)
      if (k % d == 0) num = poly::div_exact(num, get(d));
    return cache.emplace(k, std::move(num)).first->second;
  };
  return get(n);
}

// p_k with p_k(2cos t) = 2cos(kt):  p_0 = 2, p_1 = x, p_{k+1} = x p_k - p_{k-1}.
inline std::vector<Int> cos_transfer_poly(unsigned k) {
  std::vector<Int> pm{Int(2)}, pc{Int(0), Int(1)};
  if (k == 0) return pm;
  for (unsigned i = 1; i < k; ++i) {
    std::vector<Int> nx(pc.size() + 1, Int(0));
    for (size_t j = 0; j < pc.size(); ++j) nx[j + 1] = pc[j];
    for (size_t j = 0; j < pm.size(); ++j) nx[j] -= pm[j];
    pm = std::move(pc);
    pc = std::move(nx);
  }
  return pc;
}

class Scalar;

// ---------------------------------------------------------------------------
// Field Q(theta), theta = 2cos(pi/m).  Elements are coefficient vectors in the
// power basis 1, theta, ..., theta^{d-1}.  The minimal polynomial is obtained
// by folding the cyclotomic polynomial Phi_{2m}(z) through z + 1/z, which is
// irreducible by construction; this avoids any general factorization.
class Field : public std::enable_shared_from_this<Field> {
 public:
  using Coeffs = boost::container::small_vector<Rat, 2>;

  static std::shared_ptr<const Field> rationals() {
    static std::shared_ptr<const Field> q(new Field());
    return q;
  }

  // Smallest field of the family holding 2cos(pi/m) for all requested bond
  // orders.  Orders that fit an integer Cartan matrix collapse to Q.
  static std::shared_ptr<const Field> for_bond_orders(const std::set<unsigned>& ms) {
    for (unsigned m : ms)
      if (m < 2) throw std::invalid_argument("invalid Coxeter matrix entry < 2");
    bool crystallographic = true;
    for (unsigned m : ms)
      if (m != 2 && m != 3 && m != 4 && m != 6) crystallographic = false;
    if (crystallographic) return rationals();
    unsigned L = 1;
    for (unsigned m : ms)
      if (m >= 4) L = std::lcm(L, m);
    return std::shared_ptr<const Field>(new Field(L));
  }

  unsigned degree() const { return degree_; }
  unsigned generator_order() const { return m_; }  // theta = 2cos(pi/m_)
  bool is_rational() const { return degree_ == 1; }
  const std::vector<Rat>& min_poly() const { return min_poly_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_rat(const Rat& r) const;
  Scalar from_int(long v) const;
  // The field element equal to 2cos(pi/m); requires m | m_ (or rational value).
  Scalar two_cos_pi_over(unsigned m) const;

  // -- raw coefficient arithmetic ------------------------------------------
  void add_in(Coeffs& a, const Coeffs& b) const {
    for (size_t i = 0; i < degree_; ++i) a[i] += b[i];
  }
  void sub_in(Coeffs& a, const Coeffs& b) const {
    for (size_t i = 0; i < degree_; ++i) a[i] -= b[i];
  }
  Coeffs mul(const Coeffs& a, const Coeffs& b) const {
    if (degree_ == 1) return Coeffs{a[0] * b[0]};
    std::vector<Rat> prod(2 * degree_ - 1, Rat(0));
    for (size_t i = 0; i < degree_; ++i) {
      if (a[i].is_zero()) continue;
      for (size_t j = 0; j < degree_; ++j) prod[i + j] += a[i] * b[j];
    }
    return reduce(prod);
  }
  Coeffs inverse(const Coeffs& a) const;

  // Reduce an arbitrary-degree rational polynomial in theta modulo min_poly_.
  Coeffs reduce(std::vector<Rat> p) const {
    for (size_t i = p.size(); i-- > degree_;) {
      if (p[i].is_zero()) continue;
      for (size_t j = 0; j < degree_; ++j) p[i - degree_ + j] -= p[i] * min_poly_[j];
      p[i] = 0;
    }
    Coeffs out(degree_, Rat(0));
    for (size_t i = 0; i < std::min<size_t>(p.size(), degree_); ++i) out[i] = p[i];
    return out;
  }

  bool is_zero(const Coeffs& a) const {
    for (const auto& c : a)
      if (!c.is_zero()) return false;
    return true;
  }

  // Exact sign decision: zero is syntactic (canonical form), the sign of a
  // nonzero element is decided by shrinking the isolating interval of theta
  // until interval evaluation of the element becomes definite.
  int sign(const Coeffs& a) const {
    if (degree_ == 1) return sign_of(a[0]);
    bool nonzero = false;
    for (const auto& c : a)
      if (!c.is_zero()) nonzero = true;
    if (!nonzero) return 0;
    Rat lo, hi;
    {
      std::lock_guard<std::mutex> lock(iso_mutex_);
      lo = iso_lo_;
      hi = iso_hi_;
    }
    for (int round = 0; round < 20000; ++round) {
      Rat vlo, vhi;
      interval_eval(a, lo, hi, vlo, vhi);
      if (sign_of(vlo) > 0) {
        store_interval(lo, hi);
        return 1;
      }
      if (sign_of(vhi) < 0) {
        store_interval(lo, hi);
        return -1;
      }
      Rat mid = (lo + hi) / 2;
      int sm = sign_of(poly::eval(min_poly_, mid));
      if (sm == 0) throw std::logic_error("rational root of irreducible minimal polynomial");
      if (sm == iso_sign_lo_)
        lo = mid;
      else
        hi = mid;
    }
    throw std::logic_error("sign refinement did not converge");
  }

  double to_double(const Coeffs& a) const {
    double acc = 0, p = 1;
    for (size_t i = 0; i < degree_; ++i, p *= theta_approx_) acc += rat_to_double(a[i]) * p;
    return acc;
  }

 private:
  Field() : m_(2), degree_(1) {
    min_poly_ = {Rat(0), Rat(1)};  // x - 0:  theta = 2cos(pi/2) = 0
    theta_approx_ = 0.0;
  }

  explicit Field(unsigned m) : m_(m) {
    const auto& phi = cyclotomic(2 * m);
    size_t k = (phi.size() - 1) / 2;
    if (phi.size() != 2 * k + 1) throw std::logic_error("cyclotomic fold: odd degree");
    // Phi_{2m}(z) = z^k Psi(z + 1/z):  Psi = a_k + sum_j a_{k+j} p_j.
    std::vector<Int> psi{phi[k]};
    for (size_t j = 1; j <= k; ++j) {
      auto pj = cos_transfer_poly(static_cast<unsigned>(j));
      if (psi.size() < pj.size()) psi.resize(pj.size(), Int(0));
      for (size_t i = 0; i < pj.size(); ++i) psi[i] += phi[k + j] * pj[i];
    }
    degree_ = static_cast<unsigned>(psi.size() - 1);
    if (psi.back() != 1) throw std::logic_error("minimal polynomial not monic");
    min_poly_.assign(psi.begin(), psi.end());

    long double th = 2.0L * cosl(M_PIl / static_cast<long double>(m));
    theta_approx_ = static_cast<double>(th);
    // Numeric sanity of the generator before trusting the construction.
    if (std::fabs(poly::eval_d(min_poly_, theta_approx_)) > 1e-9)
      throw std::logic_error("minimal polynomial fails numeric check");
    // Isolating interval around theta, certified by an exact sign change.
    const Int scale = Int(1) << 48;
    Rat approx(Int(llroundl(th * powl(2.0L, 48))), scale);
    Rat pad(Int(1), Int(1) << 28);
    iso_lo_ = approx - pad;
    iso_hi_ = approx + pad;
    for (int widen = 0; widen < 8; ++widen) {
      int slo = sign_of(poly::eval(min_poly_, iso_lo_));
      int shi = sign_of(poly::eval(min_poly_, iso_hi_));
      if (slo != 0 && shi != 0 && slo != shi) break;
      pad *= 2;
      iso_lo_ = approx - pad;
      iso_hi_ = approx + pad;
      if (widen == 7) throw std::logic_error("could not certify isolating interval");
    }
    iso_sign_lo_ = sign_of(poly::eval(min_poly_, iso_lo_));
  }

  void interval_eval(const Coeffs& a, const Rat& lo, const Rat& hi, Rat& vlo, Rat& vhi) const {
    vlo = a[degree_ - 1];
    vhi = a[degree_ - 1];
    for (size_t i = degree_ - 1; i-- > 0;) {
      Rat c1 = vlo * lo, c2 = vlo * hi, c3 = vhi * lo, c4 = vhi * hi;
      vlo = std::min(std::min(c1, c2), std::min(c3, c4)) + a[i];
      vhi = std::max(std::max(c1, c2), std::max(c3, c4)) + a[i];
    }
  }

  void store_interval(const Rat& lo, const Rat& hi) const {
    std::lock_guard<std::mutex> lock(iso_mutex_);
    if (lo > iso_lo_) iso_lo_ = lo;
    if (hi < iso_hi_) iso_hi_ = hi;
  }

  unsigned m_;
  unsigned degree_;
  std::vector<Rat> min_poly_;
  double theta_approx_;
  mutable Rat iso_lo_, iso_hi_;
  mutable int iso_sign_lo_ = 0;
  mutable std::mutex iso_mutex_;
};

// ---------------------------------------------------------------------------
// A field element: coefficient vector plus its field.  Value type, freely
// copyable and shareable across threads.
class Scalar {
 public:
  Scalar() : f_(Field::rationals().get()), c_(1, Rat(0)) {}
  Scalar(const Field* f, Field::Coeffs c) : f_(f), c_(std::move(c)) {}
  explicit Scalar(const Rat& r) : f_(Field::rationals().get()), c_(1, r) {}
  explicit Scalar(long v) : f_(Field::rationals().get()), c_(1, Rat(v)) {}

  const Field& field() const { return *f_; }
  const Field::Coeffs& coeffs() const { return c_; }
  bool is_zero() const { return f_->is_zero(c_); }
  int sign() const { return f_->sign(c_); }
  double to_double() const { return f_->to_double(c_); }
  Rat rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) throw std::logic_error("scalar is not rational");
    return c_[0];
  }

  friend Scalar operator+(Scalar a, const Scalar& b) {
    auto [x, y] = Scalar::align(a, b);
    x.f_->add_in(x.c_, y.c_);
    return x;
  }
  friend Scalar operator-(Scalar a, const Scalar& b) {
    auto [x, y] = Scalar::align(a, b);
    x.f_->sub_in(x.c_, y.c_);
    return x;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    auto [x, y] = Scalar::align(a, b);
    return Scalar(x.f_, x.f_->mul(x.c_, y.c_));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    auto [x, y] = Scalar::align(a, b);
    return Scalar(x.f_, x.f_->mul(x.c_, x.f_->inverse(y.c_)));
  }
  Scalar operator-() const {
    Scalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    auto [x, y] = Scalar::align(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

  // Total order on coefficient vectors, for canonical sorts (not numeric).
  friend bool lex_less(const Scalar& a, const Scalar& b) {
    auto [x, y] = Scalar::align(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i)
      if (x.c_[i] != y.c_[i]) return x.c_[i] < y.c_[i];
    return false;
  }

 private:
  // Promote a rational operand into the extension field of the other side.
  static std::pair<Scalar, Scalar> align(const Scalar& a, const Scalar& b) {
    if (a.f_ == b.f_ || a.f_->degree() == b.f_->degree()) return {a, b};
    if (a.f_->is_rational()) {
      Field::Coeffs c(b.f_->degree(), Rat(0));
      c[0] = a.c_[0];
      return {Scalar(b.f_, std::move(c)), b};
    }
    if (b.f_->is_rational()) {
      Field::Coeffs c(a.f_->degree(), Rat(0));
      c[0] = b.c_[0];
      return {a, Scalar(a.f_, std::move(c))};
    }
    throw std::logic_error("mixing distinct extension fields");
  }

  const Field* f_;
  Field::Coeffs c_;
};

inline Scalar Field::zero() const { return Scalar(this, Coeffs(degree_, Rat(0))); }
inline Scalar Field::one() const {
  Coeffs c(degree_, Rat(0));
  c[0] = 1;
  return Scalar(this, c);
}
inline Scalar Field::from_rat(const Rat& r) const {
  Coeffs c(degree_, Rat(0));
  c[0] = r;
  return Scalar(this, c);
}
inline Scalar Field::from_int(long v) const { return from_rat(Rat(v)); }

inline Scalar Field::two_cos_pi_over(unsigned m) const {
  if (m < 2) throw std::invalid_argument("invalid bond order");
  if (m == 2) return zero();
  if (m == 3) return one();
  if (is_rational()) throw std::logic_error("cosine not rational; field too small");
  if (m_ % m != 0) throw std::logic_error("field does not contain requested cosine");
  auto p = cos_transfer_poly(m_ / m);
  std::vector<Rat> pr(p.begin(), p.end());
  Scalar val(this, reduce(std::move(pr)));
  if (std::fabs(val.to_double() - 2.0 * std::cos(M_PI / m)) > 1e-9)
    throw std::logic_error("cosine embedding fails numeric check");
  return val;
}

inline Field::Coeffs Field::inverse(const Coeffs& a) const {
  if (is_zero(a)) throw std::domain_error("division by zero");
  if (degree_ == 1) return Coeffs{Rat(1) / a[0]};
  // Extended Euclid in Q[x] against the minimal polynomial.
  std::vector<Rat> r0(min_poly_), r1(a.begin(), a.end());
  poly::trim(r1);
  std::vector<Rat> t0, t1{Rat(1)};
  while (!r1.empty()) {
    // divide r0 by r1
    std::vector<Rat> q;
    std::vector<Rat> rem = r0;
    poly::trim(rem);
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rat c = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      if (q.size() < shift + 1) q.resize(shift + 1, Rat(0));
      q[shift] += c;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
      poly::trim(rem);
    }
    std::vector<Rat> t2 = t0;  // t2 = t0 - q*t1
    auto qt = poly::mul(q, t1);
    if (t2.size() < qt.size()) t2.resize(qt.size(), Rat(0));
    for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is the gcd, a nonzero constant since the minimal polynomial is irreducible.
  if (r0.size() != 1) throw std::logic_error("inverse: gcd not constant");
  for (auto& c : t0) c /= r0[0];
  return reduce(std::move(t0));
}

// ---------------------------------------------------------------------------
// Exact vectors and matrices.

using ExactVector = std::vector<Scalar>;

inline ExactVector vec_add(ExactVector a, const ExactVector& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline ExactVector vec_sub(ExactVector a, const ExactVector& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline ExactVector vec_scale(ExactVector a, const Scalar& s) {
  for (auto& x : a) x *= s;
  return a;
}
inline ExactVector vec_neg(ExactVector a) {
  for (auto& x : a) x = -x;
  return a;
}
inline bool vec_is_zero(const ExactVector& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}
inline bool vec_eq(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}
inline bool vec_lex_less(const ExactVector& a, const ExactVector& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return lex_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(size_t r, size_t c, const Scalar& fill = Scalar())
      : rows_(r), cols_(c), a_(r * c, fill) {}
  static ExactMatrix from_rows(const std::vector<ExactVector>& rows) {
    ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    return m;
  }
  static ExactMatrix identity(size_t n, const Scalar& one, const Scalar& zero) {
    ExactMatrix m(n, n, zero);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  ExactVector row(size_t i) const {
    return ExactVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  ExactVector col(size_t j) const {
    ExactVector c(rows_);
    for (size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  ExactVector apply(const ExactVector& v) const {
    ExactVector out(rows_, Scalar());
    for (size_t i = 0; i < rows_; ++i) {
      Scalar acc = at(i, 0) * v[0];
      for (size_t j = 1; j < cols_; ++j) acc += at(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  ExactMatrix mul(const ExactMatrix& b) const {
    ExactMatrix r(rows_, b.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) r.at(i, j) += at(i, k) * b.at(k, j);
      }
    return r;
  }

  // Fraction-free (Bareiss) elimination; returns rank, optionally the
  // determinant for square input.
  size_t rank() const {
    ExactMatrix m = *this;
    return m.bareiss(nullptr);
  }

  Scalar det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    ExactMatrix m = *this;
    Scalar d;
    size_t r = m.bareiss(&d);
    if (r < rows_) return Scalar(Rat(0));
    return d;
  }

  // One solution of A x = b, or nullopt if inconsistent (free variables 0).
  std::optional<ExactVector> solve(const ExactVector& b) const {
    ExactMatrix m(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
      m.at(i, cols_) = b[i];
    }
    std::vector<size_t> pivot_col;
    m.rref(cols_, pivot_col);
    for (size_t i = 0; i < rows_; ++i) {
      bool zero_row = true;
      for (size_t j = 0; j < cols_; ++j)
        if (!m.at(i, j).is_zero()) zero_row = false;
      if (zero_row && !m.at(i, cols_).is_zero()) return std::nullopt;
    }
    ExactVector x(cols_, Scalar(Rat(0)));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m.at(i, cols_);
    return x;
  }

  std::vector<ExactVector> kernel_basis() const {
    ExactMatrix m = *this;
    std::vector<size_t> pivot_col;
    m.rref(cols_, pivot_col);
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<ExactVector> basis;
    for (size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      ExactVector v(cols_, Scalar(Rat(0)));
      v[f] = Scalar(Rat(1));
      for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m.at(i, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  ExactMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    ExactMatrix m(rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
      m.at(i, cols_ + i) = Scalar(Rat(1));
    }
    std::vector<size_t> pivot_col;
    m.rref(cols_, pivot_col);
    if (pivot_col.size() != rows_) throw std::domain_error("matrix is singular");
    ExactMatrix inv(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = m.at(i, cols_ + j);
    return inv;
  }

 private:
  // Bareiss: pivots divide out exactly, keeping intermediate growth tame.
  size_t bareiss(Scalar* det_out) {
    Scalar prev(Rat(1));
    int sign = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
      size_t p = r;
      while (p < rows_ && at(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != r) {
        for (size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
        sign = -sign;
      }
      for (size_t i = r + 1; i < rows_; ++i) {
        for (size_t j = c + 1; j < cols_; ++j)
          at(i, j) = (at(r, c) * at(i, j) - at(i, c) * at(r, j)) / prev;
        at(i, c) = Scalar(Rat(0));
      }
      prev = at(r, c);
      ++r;
    }
    if (det_out) {
      if (r == rows_ && rows_ == cols_) {
        *det_out = sign < 0 ? -prev : prev;
      } else {
        *det_out = Scalar(Rat(0));
      }
    }
    return r;
  }

  // Reduced row echelon over the leading block of `lead` columns.
  void rref(size_t lead, std::vector<size_t>& pivot_col) {
    size_t r = 0;
    for (size_t c = 0; c < lead && r < rows_; ++c) {
      size_t p = r;
      while (p < rows_ && at(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
      Scalar inv_pivot = Scalar(Rat(1)) / at(r, c);
      for (size_t j = c; j < cols_; ++j) at(r, j) *= inv_pivot;
      for (size_t i = 0; i < rows_; ++i) {
        if (i == r || at(i, c).is_zero()) continue;
        Scalar f = at(i, c);
        for (size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
      }
      pivot_col.push_back(c);
      ++r;
    }
  }

  size_t rows_, cols_;
  std::vector<Scalar> a_;
};

inline size_t rank_of(const ExactMatrix& m) { return m.rank(); }

}  // namespace brickpoly
