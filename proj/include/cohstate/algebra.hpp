#pragma once

// Polynomials in boson creation/annihilation operators b_i^dagger, b_i
// (modes i = 1..n) and their rewriting into normal-ordered m-body terms.

#include <complex>
#include <compare>
#include <cstddef>
#include <vector>

namespace cohstate {

using Complex = std::complex<double>;

inline constexpr double kMergeTolerance = 1e-12;

/// A single ladder operator: b_mode^dagger when `dagger` is set, else b_mode.
struct Ladder {
  int mode = 1;
  bool dagger = false;

  friend auto operator<=>(const Ladder&, const Ladder&) = default;
};

/// coeff * (prod b^dagger_{creators}) (prod b_{annihilators}). Both index lists
/// are kept sorted ascending.
struct NormalTerm {
  Complex coeff{1.0, 0.0};
  std::vector<int> creators;
  std::vector<int> annihilators;

  /// m = max(#creators, #annihilators)
  int body() const;
  bool number_conserving() const { return creators.size() == annihilators.size(); }
};

class OperatorPoly {
 public:
  /// coeff times the ordered product of `factors` (leftmost factor acts last).
  struct Product {
    Complex coeff{1.0, 0.0};
    std::vector<Ladder> factors;
  };

  explicit OperatorPoly(int modes);

  static OperatorPoly identity(int modes, Complex c = 1.0);
  static OperatorPoly creator(int modes, int i);
  static OperatorPoly annihilator(int modes, int i);
  static OperatorPoly from_normal(int modes, const NormalTerm& term);

  int modes() const { return modes_; }
  const std::vector<Product>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Throws std::out_of_range for a factor outside [1, modes].
  void add_term(Product term);

  /// Every term has all creators to the left of all annihilators.
  bool is_normal_ordered() const;

  /// Terms in NormalTerm form; throws std::logic_error unless normal ordered.
  std::vector<NormalTerm> normal_terms() const;

  OperatorPoly& operator+=(const OperatorPoly& other);
  OperatorPoly& operator-=(const OperatorPoly& other);
  OperatorPoly& operator*=(Complex c);

 private:
  int modes_;
  std::vector<Product> terms_;
};

OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b);
OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b);
OperatorPoly operator*(Complex c, OperatorPoly p);
OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b);

/// c * b_i^dagger b_j
OperatorPoly bilinear(int modes, int i, int j, Complex c = 1.0);

/// Sum over i of b_i^dagger b_i.
OperatorPoly number_operator(int modes);

/// Formal product; terms are concatenated, not reordered.
OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q);

/// Rewrites every product into normal order using b_i b_j^dagger =
/// b_j^dagger b_i + delta_ij. Like terms are not merged; see simplify().
OperatorPoly normal_order(const OperatorPoly& p);

OperatorPoly adjoint(const OperatorPoly& p);

/// Merges like terms and drops those with |coeff| < tol. Exact zeros are
/// always dropped. Output order is deterministic (sorted by term key).
OperatorPoly simplify(const OperatorPoly& p, double tol = kMergeTolerance);

/// True when simplify(normal_order(a - b), tol) is empty.
bool equivalent(const OperatorPoly& a, const OperatorPoly& b, double tol = kMergeTolerance);

}  // namespace cohstate
