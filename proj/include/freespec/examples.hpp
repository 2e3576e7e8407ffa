#pragma once

#include "freespec/pencil.hpp"

#include <string>
#include <vector>

namespace freespec::examples {

struct NamedSpectrahedron {
  std::string name;
  LinearPencil pencil;
  int d = 0;  // number of non-self-adjoint coordinates (mdg only)
  int g = 0;  // number of self-adjoint coordinates as named by the family
  std::string coordinates;  // how the pencil variables map to the family's variables
};

/// C_g: -I <= X_j <= I. Coefficients diag(+1 at 2j, -1 at 2j+1), m = 2g.
NamedSpectrahedron free_cube(int g);

/// B_g: sum X_j^2 <= I via [[I, row(X)],[col(X), I]] >= 0, m = g + 1.
NamedSpectrahedron matrix_ball(int g);

/// M_{d,g}: sum T_i T_i* + sum X_j^2 <= I via the (1+d+g)-block row
/// contraction LMI. Pencil variables are (U_1, V_1, ..., U_d, V_d, X_1..X_g)
/// with T_i = U_i + i V_i; the pencil is complex whenever d >= 1.
NamedSpectrahedron mdg_pencil(int d, int g);

/// The disk pencil I - sigma_z x_1 - sigma_x x_2.
NamedSpectrahedron pauli_disk();

/// Parses "cube:g", "ball:g", "mdg:d,g" and "pauli". Throws UnknownName.
NamedSpectrahedron by_name(const std::string& spec);
std::vector<std::string> registry();

/// Self-adjoint coordinates (U_1, V_1, ..., U_d, V_d, X_1..X_g) of a point of
/// M_{d,g}, with U_i = (T_i + T_i*)/2 and V_i = (T_i - T_i*)/(2i).
MatrixTuple mdg_coordinates(const std::vector<CMatrix>& t, const MatrixTuple& x);

/// (sigma_z, sigma_x).
MatrixTuple pauli_pair();

/// Each X_j becomes [[X_j, R_j],[R_j, -X_j]] with R_j = sqrt(I - X_j^2): a
/// self-adjoint unitary compressing to X_j. Throws OutsideCube.
MatrixTuple halmos_dilation(const MatrixTuple& x, double tol = 1e-10);

struct M1gDilation {
  CMatrix s;       // 2n x 2n
  MatrixTuple y;   // g-tuple of 2n x 2n
  double delta = 0;
  CMatrix a;       // (I - TT* - sum X_j^2)^{1/2}
  CMatrix b;
  CMatrix c;
  CMatrix d;
};

/// For a strict contraction T T* + sum X_j^2 < I with T invertible:
/// S = [[T, A],[B, C]], Y_1 = X_1 (+) D, Y_j = X_j (+) 0 with C = delta I,
/// B = -C A* (T^{-1})*, D = sqrt(I - BB* - CC*), and delta halved from
/// sigma_min(T)/2 until BB* + CC* <= (1 - 1e-6) I. Then SS* + sum Y_j^2 = I.
/// Throws SingularT or NotStrictContraction.
M1gDilation m1g_maximal_dilation(const CMatrix& t, const MatrixTuple& x);

}  // namespace freespec::examples
