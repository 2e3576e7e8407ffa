#pragma once

#include "freespec/types.hpp"

#include <vector>

namespace freespec {

/// A g-tuple of hermitian n x n matrices over the real or complex field.
///
/// Entries are validated on construction: each must be square of the common
/// dimension n, within `sym_tol * (1 + ||M||_F)` of hermitian (it is then
/// symmetrized exactly), and, for the real field, free of imaginary parts.
/// Values are immutable after construction. The 0-dimensional tuple is legal
/// and acts as the identity for direct sums.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  MatrixTuple(std::vector<CMatrix> entries, Field field, double sym_tol = Tolerances{}.sym);
  /// Explicit g/n form, needed when g == 0 or n == 0.
  MatrixTuple(int g, int n, std::vector<CMatrix> entries, Field field,
              double sym_tol = Tolerances{}.sym);

  static MatrixTuple zero(int g, int n, Field field);
  static MatrixTuple from_real(const std::vector<RMatrix>& entries);

  int g() const { return g_; }
  int n() const { return n_; }
  Field field() const { return field_; }
  bool empty() const { return n_ == 0; }

  const CMatrix& operator[](int j) const { return entries_[static_cast<size_t>(j)]; }
  const std::vector<CMatrix>& entries() const { return entries_; }

  /// Entrywise U* X_j U for an n x k matrix U (not necessarily square).
  MatrixTuple compress(const CMatrix& u) const;
  MatrixTuple scaled(double s) const;
  /// Same matrices, declared over `f`. Narrowing to real requires real entries.
  MatrixTuple with_field(Field f) const;
  /// Stacked Frobenius norm.
  double norm() const;

 private:
  void validate(double sym_tol);

  int g_ = 0;
  int n_ = 0;
  Field field_ = Field::kReal;
  std::vector<CMatrix> entries_;
};

double distance(const MatrixTuple& a, const MatrixTuple& b);

/// X (+) Y, entrywise block diagonal.
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

/// A list of (gamma_i, X^i) with gamma_i of shape n_i x n. The normalization
/// sum gamma_i* gamma_i = I_n is checked by `validate`, not on construction.
struct CombinationTerm {
  CMatrix gamma;
  MatrixTuple point;
};

struct MatrixConvexCombination {
  std::vector<CombinationTerm> terms;
  int target_dim = 0;

  /// ||sum gamma_i* gamma_i - I||_F.
  double normalization_defect() const;
  /// Throws IllFormedCombination on shape errors, zero gammas or a defect
  /// beyond tol.comb.
  void validate(const Tolerances& tol = {}) const;
};

/// sum gamma_i* X^i gamma_i.
MatrixTuple apply_combination(const MatrixConvexCombination& c, const Tolerances& tol = {});

/// True iff every gamma_i is onto C^{n_i}, i.e. has numerical rank n_i.
bool is_proper(const MatrixConvexCombination& c, const Tolerances& tol = {});

/// Real-orthonormal basis of the self-adjoint commutant {S = S* : S X_j = X_j S}.
struct Commutant {
  std::vector<CMatrix> basis;
  int dim = 0;
  double smallest_kept = 0;
};
Commutant self_adjoint_commutant(const MatrixTuple& x, const Tolerances& tol = {});

struct IrreducibilityResult {
  bool irreducible = false;
  int commutant_dim = 0;
};
/// Irreducible iff the self-adjoint commutant is R * I (real dimension 1).
IrreducibilityResult irreducible(const MatrixTuple& x, const Tolerances& tol = {});

/// Dimension over the field of {T : T X_j = Y_j T for all j}.
int intertwiner_dim(const MatrixTuple& x, const MatrixTuple& y, const Tolerances& tol = {});

/// X ~u Y. Decided by intertwiner dimensions: X and Y are unitarily
/// equivalent iff dim Int(X,Y) = dim Int(X,X) = dim Int(Y,Y).
bool unitarily_equivalent(const MatrixTuple& x, const MatrixTuple& y, const Tolerances& tol = {});

/// Specht-type necessary condition: traces of all words in the entries up to
/// `max_length` agree within tol.trace * (1 + max |trace|). Exponential in
/// max_length; `max_words` caps the work (returns true once the cap is hit).
bool word_traces_agree(const MatrixTuple& x, const MatrixTuple& y, int max_length,
                       const Tolerances& tol = {}, long max_words = 2'000'000);

/// The pair (gamma* gamma, gamma* X gamma) for gamma of shape k x n with unit trace.
struct GammaPoint {
  CMatrix mass;
  MatrixTuple image;
};
GammaPoint gamma_embed(const MatrixTuple& x, const CMatrix& gamma, const Tolerances& tol = {});

}  // namespace freespec
