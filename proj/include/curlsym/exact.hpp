#pragma once
// Exact Gaussian-rational arithmetic and truncated polynomials in the six
// jet variables (x1, x2, x3, eta1, eta2, eta3).

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curlsym {

using Rational = mpq_class;

inline Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(long v) : re(v) {}
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    // skip the cross terms when either factor is purely real or imaginary
    if (sgn(a.im) == 0) return {a.re * b.re, a.re * b.im};
    if (sgn(a.re) == 0) return {-(a.im * b.im), a.im * b.re};
    if (sgn(b.im) == 0) return {a.re * b.re, a.im * b.re};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    Rational n = b.re * b.re + b.im * b.im;
    GaussianRational p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return z.re.get_str();
  std::string s = sgn(z.re) == 0 ? "" : z.re.get_str() + (sgn(z.im) > 0 ? "+" : "");
  return s + z.im.get_str() + "i";
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

enum Var : int { X1 = 0, X2, X3, E1, E2, E3 };
inline Var xvar(int a) { return Var(a); }
inline Var evar(int a) { return Var(3 + a); }

struct MultiIndex {
  std::array<std::uint8_t, 6> e{};

  int degree() const { return e[0] + e[1] + e[2] + e[3] + e[4] + e[5]; }
  int x_degree() const { return e[0] + e[1] + e[2]; }
  int eta_degree() const { return e[3] + e[4] + e[5]; }
  auto operator<=>(const MultiIndex&) const = default;
};

inline MultiIndex mono(std::initializer_list<int> ex) {
  MultiIndex m;
  int k = 0;
  for (int v : ex) m.e[k++] = std::uint8_t(v);
  return m;
}

class TruncatedPoly {
 public:
  using Terms = std::map<MultiIndex, GaussianRational>;

  explicit TruncatedPoly(int order = 0) : order_(order) {}

  static TruncatedPoly constant(const GaussianRational& c, int order) {
    TruncatedPoly p(order);
    p.add_term(MultiIndex{}, c);
    return p;
  }
  static TruncatedPoly variable(Var v, int order) {
    TruncatedPoly p(order);
    MultiIndex m;
    m.e[v] = 1;
    p.add_term(m, GaussianRational(1));
    return p;
  }
  static TruncatedPoly monomial(const MultiIndex& m, const GaussianRational& c, int order) {
    TruncatedPoly p(order);
    p.add_term(m, c);
    return p;
  }

  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GaussianRational coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational() : it->second;
  }
  GaussianRational constant_term() const { return coeff(MultiIndex{}); }

  void add_term(const MultiIndex& m, const GaussianRational& c) {
    if (m.degree() > order_ || c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TruncatedPoly truncated(int order) const {
    TruncatedPoly r(std::min(order, order_));
    for (const auto& [m, c] : terms_)
      if (m.degree() <= r.order_) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  TruncatedPoly operator-() const {
    TruncatedPoly r(order_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  friend TruncatedPoly operator+(const TruncatedPoly& a, const TruncatedPoly& b) {
    TruncatedPoly r = a.truncated(std::min(a.order_, b.order_));
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend TruncatedPoly operator-(const TruncatedPoly& a, const TruncatedPoly& b) { return a + (-b); }

  friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) {
    TruncatedPoly r(std::min(a.order_, b.order_));
    for (const auto& [ma, ca] : a.terms_) {
      int da = ma.degree();
      if (da > r.order_) continue;
      for (const auto& [mb, cb] : b.terms_) {
        if (da + mb.degree() > r.order_) continue;
        MultiIndex m;
        for (int k = 0; k < 6; ++k) m.e[k] = std::uint8_t(ma.e[k] + mb.e[k]);
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  TruncatedPoly& operator+=(const TruncatedPoly& b) { return *this = *this + b; }
  TruncatedPoly& operator-=(const TruncatedPoly& b) { return *this = *this - b; }
  TruncatedPoly& operator*=(const TruncatedPoly& b) { return *this = *this * b; }

  friend TruncatedPoly operator*(const GaussianRational& s, const TruncatedPoly& a) {
    TruncatedPoly r(a.order_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, s * c);
    return r;
  }

  TruncatedPoly diff(Var v) const {
    TruncatedPoly r(order_ - 1);
    for (const auto& [m, c] : terms_) {
      if (m.e[v] == 0) continue;
      MultiIndex d = m;
      d.e[v]--;
      r.terms_.emplace(d, Rational(long(m.e[v])) * c);
    }
    return r;
  }

  TruncatedPoly conj() const {
    TruncatedPoly r(order_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c.conj());
    return r;
  }

  // Substitute zero for the x variables (resp. the eta variables).
  TruncatedPoly at_x_zero() const { return filtered([](const MultiIndex& m) { return m.x_degree() == 0; }); }
  TruncatedPoly at_eta_zero() const { return filtered([](const MultiIndex& m) { return m.eta_degree() == 0; }); }

  template <class Pred>
  TruncatedPoly filtered(Pred keep) const {
    TruncatedPoly r(order_);
    for (const auto& [m, c] : terms_)
      if (keep(m)) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  // Lowest total degree present, or order+1 when zero.
  int min_degree() const {
    int d = order_ + 1;
    for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
    return d;
  }

  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }
  // Equality of values up to the smaller order.
  friend bool same_to_order(const TruncatedPoly& a, const TruncatedPoly& b) { return (a - b).is_zero(); }

 private:
  int order_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const TruncatedPoly& p);

inline std::string to_string(const TruncatedPoly& p) {
  static const char* names[6] = {"x1", "x2", "x3", "h1", "h2", "h3"};
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : p.terms()) {
    std::string cs = to_string(c);
    if (!c.is_real() && sgn(c.re) != 0) cs = "(" + cs + ")";
    if (!s.empty()) s += " + ";
    s += cs;
    for (int k = 0; k < 6; ++k) {
      if (m.e[k] == 0) continue;
      s += std::string("*") + names[k];
      if (m.e[k] > 1) s += "^" + std::to_string(m.e[k]);
    }
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const TruncatedPoly& p) { return os << to_string(p); }

// (1+u)^r expanded to the order of u; u must have no constant term.
inline TruncatedPoly binomial_power_jet(const TruncatedPoly& u, const Rational& r) {
  if (!u.constant_term().is_zero())
    throw std::invalid_argument("binomial_power_jet: argument has a non-zero constant term");
  int n = u.order();
  TruncatedPoly result = TruncatedPoly::constant(1, n);
  TruncatedPoly power = TruncatedPoly::constant(1, n);
  Rational c = 1;
  for (int k = 1; k <= n; ++k) {
    c = c * (r - (k - 1)) / k;
    power = power * u;
    if (power.is_zero()) break;
    result += GaussianRational(c) * power;
  }
  return result;
}

// Dense row-major matrix of polynomials; shapes 3x3, 3x1, 1x3 and 1x1 are used.
struct PolyMatrix {
  int rows = 0, cols = 0;
  std::vector<TruncatedPoly> a;

  PolyMatrix() = default;
  PolyMatrix(int r, int c, int order) : rows(r), cols(c), a(std::size_t(r * c), TruncatedPoly(order)) {}

  static PolyMatrix identity(int n, int order) {
    PolyMatrix m(n, n, order);
    for (int i = 0; i < n; ++i) m(i, i) = TruncatedPoly::constant(1, order);
    return m;
  }
  static PolyMatrix constant(const std::vector<std::vector<GaussianRational>>& v, int order) {
    PolyMatrix m(int(v.size()), int(v[0].size()), order);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) m(i, j) = TruncatedPoly::constant(v[i][j], order);
    return m;
  }

  TruncatedPoly& operator()(int i, int j) { return a[std::size_t(i * cols + j)]; }
  const TruncatedPoly& operator()(int i, int j) const { return a[std::size_t(i * cols + j)]; }

  int order() const {
    int o = a.empty() ? 0 : a[0].order();
    for (const auto& p : a) o = std::min(o, p.order());
    return o;
  }
  bool is_zero() const {
    for (const auto& p : a)
      if (!p.is_zero()) return false;
    return true;
  }

  template <class F>
  PolyMatrix map(F f) const {
    PolyMatrix r = *this;
    for (auto& p : r.a) p = f(p);
    return r;
  }

  PolyMatrix truncated(int order) const {
    return map([order](const TruncatedPoly& p) { return p.truncated(order); });
  }
  PolyMatrix diff(Var v) const {
    return map([v](const TruncatedPoly& p) { return p.diff(v); });
  }
  PolyMatrix at_x_zero() const {
    return map([](const TruncatedPoly& p) { return p.at_x_zero(); });
  }
  PolyMatrix at_eta_zero() const {
    return map([](const TruncatedPoly& p) { return p.at_eta_zero(); });
  }
  PolyMatrix conj_transpose() const {
    PolyMatrix r(cols, rows, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j).conj();
    return r;
  }
  TruncatedPoly trace() const {
    TruncatedPoly t(order());
    for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
    return t;
  }

  PolyMatrix operator-() const {
    return map([](const TruncatedPoly& p) { return -p; });
  }
  friend PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix r = x;
    for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
  }
  friend PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y) { return x + (-y); }
  friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix r(x.rows, y.cols, std::min(x.order(), y.order()));
    for (int i = 0; i < x.rows; ++i)
      for (int j = 0; j < y.cols; ++j) {
        TruncatedPoly s(std::min(x.order(), y.order()));
        for (int k = 0; k < x.cols; ++k) {
          const auto& p = x(i, k);
          const auto& q = y(k, j);
          if (p.is_zero() || q.is_zero()) {
            s = s.truncated(std::min(p.order(), q.order()));
            continue;
          }
          s += p * q;
        }
        r(i, j) = s;
      }
    return r;
  }
  friend PolyMatrix operator*(const TruncatedPoly& s, const PolyMatrix& x) {
    return x.map([&s](const TruncatedPoly& p) { return s * p; });
  }
  friend PolyMatrix operator*(const GaussianRational& s, const PolyMatrix& x) {
    return x.map([&s](const TruncatedPoly& p) { return s * p; });
  }
  PolyMatrix& operator+=(const PolyMatrix& y) { return *this = *this + y; }
  PolyMatrix& operator-=(const PolyMatrix& y) { return *this = *this - y; }

  friend bool operator==(const PolyMatrix& x, const PolyMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

// Values at the anchor (all six variables zero).
inline std::vector<std::vector<GaussianRational>> constant_part(const PolyMatrix& m) {
  std::vector<std::vector<GaussianRational>> v(std::size_t(m.rows), std::vector<GaussianRational>(std::size_t(m.cols)));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) v[std::size_t(i)][std::size_t(j)] = m(i, j).constant_term();
  return v;
}

inline std::ostream& operator<<(std::ostream& os, const PolyMatrix& m) {
  for (int i = 0; i < m.rows; ++i) {
    os << "[";
    for (int j = 0; j < m.cols; ++j) os << (j ? ", " : "") << m(i, j);
    os << "]\n";
  }
  return os;
}

}  // namespace curlsym
