#pragma once
// Symbol calculus on graded jets: left-symbol composition, subprincipal
// symbols of operators on 1-forms, the Christoffel-corrected Poisson bracket,
// adjoints, matrix traces and the parallel-transport trace corrections.

#include "curlsym/geometry.hpp"
#include "curlsym/jet.hpp"

#include <optional>

namespace curlsym {

// All multi-indices over three variables of total size k.
inline std::vector<std::array<int, 3>> multi_indices3(int k) {
  std::vector<std::array<int, 3>> out;
  for (int a = k; a >= 0; --a)
    for (int b = k - a; b >= 0; --b) out.push_back({a, b, k - a - b});
  return out;
}

// 1 / (i^k gamma!)
inline GaussianRational composition_weight(const std::array<int, 3>& g) {
  static const long fact[] = {1, 1, 2, 6, 24, 120, 720};
  int k = g[0] + g[1] + g[2];
  Rational w(1, fact[g[0]] * fact[g[1]] * fact[g[2]]);
  w.canonicalize();
  switch (k % 4) {
    case 0: return {w, 0};
    case 1: return {0, -w};
    case 2: return {-w, 0};
    default: return {0, w};
  }
}

inline PolyMatrix diff_multi(const PolyMatrix& m, const std::array<int, 3>& g, bool eta) {
  PolyMatrix r = m;
  for (int v = 0; v < 3; ++v)
    for (int t = 0; t < g[std::size_t(v)]; ++t) r = r.diff(eta ? evar(v) : xvar(v));
  return r;
}

// Degree (top_b + top_a - j) part of sigma_{BA}:
// sum_k sum_{|g|=k} 1/(i^k g!) d_eta^g b . d_x^g a
inline PolyMatrix compose_component(const SymbolJet& b, const SymbolJet& a, int j) {
  const int n = a.accuracy;
  PolyMatrix acc(b.rows, a.cols, n - j);
  for (int k = 0; k <= j; ++k)
    for (int kb = 0; kb + k <= j; ++kb) {
      int ka = j - k - kb;
      if (b[kb].is_zero() || a[ka].is_zero()) continue;
      for (const auto& g : multi_indices3(k)) {
        PolyMatrix db = diff_multi(b[kb], g, true);
        if (db.is_zero()) continue;
        PolyMatrix da = diff_multi(a[ka], g, false);
        if (da.is_zero()) continue;
        acc += composition_weight(g) * (db * da).truncated(n - j);
      }
    }
  return acc.truncated(n - j);
}

inline SymbolJet compose(const SymbolJet& b, const SymbolJet& a) {
  if (b.cols != a.rows) throw std::invalid_argument("compose: shape mismatch");
  if (b.accuracy != a.accuracy) throw std::invalid_argument("compose: accuracy mismatch");
  SymbolJet out(b.top_degree + a.top_degree, a.accuracy, b.rows, a.cols);
  for (int j = 0; j <= a.accuracy; ++j) out.set(j, compose_component(b, a, j));
  return out;
}

inline SymbolJet commutator(const SymbolJet& p, const SymbolJet& q) { return compose(p, q) - compose(q, p); }

// [Q_sub]_m^n = q_{s-1} + (i/2) d2 q_s/dx^c d xi_c
//   + (i/2)(Gamma^a_{ca} dq_m^n - Gamma^a_{cm} dq_a^n - Gamma^n_{ca} dq_m^a),  d = d/d xi_c
inline PolyMatrix subprincipal(const SymbolJet& q, const MetricJet& mj) {
  if (q.accuracy < 1) throw std::invalid_argument("subprincipal: jet has no subleading component");
  if (q.rows != 3 || q.cols != 3) throw std::invalid_argument("subprincipal: 3x3 symbol required");
  const PolyMatrix& qs = q[0];
  const GaussianRational half_i(0, rat(1, 2));
  PolyMatrix out = q[1];
  for (int c = 0; c < 3; ++c) {
    PolyMatrix dq = qs.diff(evar(c));
    out += half_i * dq.diff(xvar(c));
    TruncatedPoly trace_gamma = mj.Gamma(0, c, 0) + mj.Gamma(1, c, 1) + mj.Gamma(2, c, 2);
    PolyMatrix corr(3, 3, dq.order());
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        TruncatedPoly s = trace_gamma * dq(m, n);
        for (int a = 0; a < 3; ++a) {
          s -= mj.Gamma(a, c, m) * dq(a, n);
          s -= mj.Gamma(n, c, a) * dq(m, a);
        }
        corr(m, n) = s;
      }
    out += half_i * corr;
  }
  return out;
}

// Scalar version for 1x1 jets (operators on functions).
inline TruncatedPoly subprincipal_scalar(const SymbolJet& q) {
  if (q.accuracy < 1 || q.rows != 1 || q.cols != 1) throw std::invalid_argument("subprincipal_scalar: 1x1 jet required");
  TruncatedPoly out = q[1](0, 0);
  for (int c = 0; c < 3; ++c)
    out += GaussianRational(0, rat(1, 2)) * q[0](0, 0).diff(evar(c)).diff(xvar(c));
  return out;
}

// x-derivative with Christoffel corrections on both matrix indices:
// D_c Q_a^k = d_c Q_a^k - Gamma^{a'}_{ca} Q_{a'}^k + Gamma^k_{ck'} Q_a^{k'}
inline PolyMatrix covariant_dx(const PolyMatrix& q, int c, const MetricJet& mj) {
  PolyMatrix out = q.diff(xvar(c));
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 3; ++k) {
      TruncatedPoly& s = out(a, k);
      for (int t = 0; t < 3; ++t) {
        s -= mj.Gamma(t, c, a) * q(t, k);
        s += mj.Gamma(k, c, t) * q(a, t);
      }
    }
  return out;
}

inline PolyMatrix poisson_bracket(const PolyMatrix& qp, const PolyMatrix& rp, const MetricJet& mj) {
  PolyMatrix out(3, 3, std::min(qp.order(), rp.order()) - 1);
  for (int c = 0; c < 3; ++c) {
    out += covariant_dx(qp, c, mj) * rp.diff(evar(c));
    out -= qp.diff(evar(c)) * covariant_dx(rp, c, mj);
  }
  return out;
}

// (Q*)_m^n = g_{mb} conj(Q_a^b) g^{an}
inline PolyMatrix adjoint_matrix(const PolyMatrix& q, const MetricJet& mj) {
  return mj.g * q.conj_transpose() * mj.g_inv;
}

struct PrinSub {
  PolyMatrix prin, sub;
};

inline PrinSub adjoint_pair(const PrinSub& ps, const MetricJet& mj) {
  return {adjoint_matrix(ps.prin, mj), adjoint_matrix(ps.sub, mj)};
}

inline PrinSub adjoint_prin_sub(const SymbolJet& q, const MetricJet& mj) {
  return adjoint_pair({q[0], subprincipal(q, mj)}, mj);
}

inline SymbolJet trace_diag(const SymbolJet& q) {
  if (q.rows != q.cols) throw std::invalid_argument("trace_diag: square symbol required");
  SymbolJet t(q.top_degree, q.accuracy, 1, 1);
  for (int k = 0; k <= q.accuracy; ++k) {
    PolyMatrix m(1, 1, q.order_of(k));
    m(0, 0) = q[k].trace();
    t.set(k, m);
  }
  return t;
}

// d^k / d eta^(multi) of a polynomial at the anchor.
inline GaussianRational eta_derivative_at_anchor(const TruncatedPoly& p, std::initializer_list<int> vars) {
  MultiIndex e;
  for (int v : vars) e.e[std::size_t(3 + v)]++;
  if (e.degree() > p.order()) throw std::invalid_argument("derivative exceeds jet order");
  long mult = 1;
  for (int k = 3; k < 6; ++k)
    for (int t = 2; t <= e.e[std::size_t(k)]; ++t) mult *= t;
  return GaussianRational(Rational(mult)) * p.coeff(e);
}

// Level 2: (1/6) Riem^a_{m k n} d2[q0]_a^k / d xi_m d xi_n
// Level 3: -(i/6) d2 Gamma^a_{s k}/dx^m dx^n  d3[q0]_a^k / d xi_s d xi_m d xi_n
inline GaussianRational transport_correction(const PolyMatrix& q0, const MetricJet& mj, int level) {
  GaussianRational sum;
  if (level == 2) {
    for (int a = 0; a < 3; ++a)
      for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k)
          for (int n = 0; n < 3; ++n) {
            const Rational& r = mj.riem0(a, m, k, n);
            if (sgn(r) == 0) continue;
            sum += GaussianRational(r) * eta_derivative_at_anchor(q0(a, k), {m, n});
          }
    return GaussianRational(rat(1, 6)) * sum;
  }
  if (level == 3) {
    for (int a = 0; a < 3; ++a)
      for (int s = 0; s < 3; ++s)
        for (int k = 0; k < 3; ++k)
          for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) {
              Rational d = mj.d2Gamma(a, s, k, m, n);
              if (sgn(d) == 0) continue;
              sum += GaussianRational(d) * eta_derivative_at_anchor(q0(a, k), {s, m, n});
            }
    return GaussianRational(0, rat(-1, 6)) * sum;
  }
  throw std::invalid_argument("transport_correction: level must be 2 or 3");
}

// Jet form: checks that the degree -1 component vanishes over the anchor point.
inline GaussianRational transport_correction(const SymbolJet& pdiff, const MetricJet& mj, int level) {
  if (pdiff.accuracy >= 1 && !pdiff[1].at_x_zero().is_zero())
    throw std::domain_error("transport_correction: degree -1 component does not vanish at the anchor point");
  return transport_correction(pdiff[0], mj, level);
}

}  // namespace curlsym
