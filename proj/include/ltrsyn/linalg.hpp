#pragma once

#include <Eigen/Dense>

namespace ltr {

/// Scaling-only Parlett-Reinsch balancing: finds a diagonal D (powers of two)
/// so that D^-1 M D has rows and columns of comparable norm. Returns D's
/// diagonal; M is replaced by the balanced matrix.
Eigen::VectorXd balance_in_place(Eigen::MatrixXd& M);

/// Eigenvalues of a general real matrix, computed after balancing.
Eigen::VectorXcd balanced_eigenvalues(const Eigen::MatrixXd& M);

/// True when every eigenvalue has strictly negative real part.
bool is_hurwitz(const Eigen::MatrixXd& M);

} // namespace ltr
