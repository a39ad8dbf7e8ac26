#pragma once
// Graded symbol jets: component k carries the homogeneity (top - k) part,
// Taylor-expanded at the anchor covector, truncated at joint order N - k.

#include "curlsym/exact.hpp"

namespace curlsym {

struct SymbolJet {
  int top_degree = 0;
  int accuracy = 0;
  int rows = 3, cols = 3;
  std::vector<PolyMatrix> comp;  // size accuracy + 1

  SymbolJet() = default;
  SymbolJet(int top, int n, int r, int c) : top_degree(top), accuracy(n), rows(r), cols(c) {
    for (int k = 0; k <= n; ++k) comp.emplace_back(r, c, n - k);
  }

  // Builds a jet from leading components; missing ones are zero.
  static SymbolJet from(int top, int n, const std::vector<PolyMatrix>& parts) {
    SymbolJet j(top, n, parts.at(0).rows, parts.at(0).cols);
    for (std::size_t k = 0; k < parts.size() && int(k) <= n; ++k) j.set(int(k), parts[k]);
    return j;
  }

  int order_of(int k) const { return accuracy - k; }
  int degree_of(int k) const { return top_degree - k; }

  void set(int k, const PolyMatrix& m) {
    if (m.rows != rows || m.cols != cols) throw std::invalid_argument("symbol jet: component shape mismatch");
    if (m.order() < order_of(k)) throw std::invalid_argument("symbol jet: component known to insufficient order");
    comp[std::size_t(k)] = m.truncated(order_of(k));
  }
  const PolyMatrix& operator[](int k) const { return comp[std::size_t(k)]; }

  static SymbolJet identity(int n) {
    return from(0, n, {PolyMatrix::identity(3, n)});
  }

  friend SymbolJet operator+(const SymbolJet& a, const SymbolJet& b) {
    check_same(a, b);
    SymbolJet r = a;
    for (int k = 0; k <= a.accuracy; ++k) r.comp[std::size_t(k)] = a[k] + b[k];
    return r;
  }
  friend SymbolJet operator-(const SymbolJet& a, const SymbolJet& b) {
    check_same(a, b);
    SymbolJet r = a;
    for (int k = 0; k <= a.accuracy; ++k) r.comp[std::size_t(k)] = a[k] - b[k];
    return r;
  }
  friend SymbolJet operator*(const GaussianRational& s, const SymbolJet& a) {
    SymbolJet r = a;
    for (auto& m : r.comp) m = s * m;
    return r;
  }
  friend bool operator==(const SymbolJet& a, const SymbolJet& b) {
    return a.top_degree == b.top_degree && a.accuracy == b.accuracy && a.rows == b.rows && a.cols == b.cols &&
           a.comp == b.comp;
  }

  bool is_zero() const {
    for (const auto& m : comp)
      if (!m.is_zero()) return false;
    return true;
  }

 private:
  static void check_same(const SymbolJet& a, const SymbolJet& b) {
    if (a.top_degree != b.top_degree || a.accuracy != b.accuracy || a.rows != b.rows || a.cols != b.cols)
      throw std::invalid_argument("symbol jet: grading or shape mismatch");
  }
};

}  // namespace curlsym
