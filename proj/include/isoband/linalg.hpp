#pragma once

#include <Eigen/Core>
#include <vector>

namespace isoband {

using CMatrix = Eigen::MatrixXcd;

/// Lowest `count` eigenvalues (ascending) of the Hermitian pencil H u = λ B u
/// with B Hermitian positive definite (LAPACK zpotrf, zhegst, zheevr; only
/// the lower triangles are read). Pass an empty B for the standard problem.
/// count <= 0 returns all.
std::vector<double> lowest_generalized_eigenvalues(const CMatrix& H, const CMatrix& B, int count);

/// Smallest `count` singular values (ascending) of a general complex matrix.
std::vector<double> smallest_singular_values(const CMatrix& M, int count);

/// Relative Hermitian defect ‖M − Mᴴ‖_F / ‖M‖_F (0 for the zero matrix).
double hermitian_defect(const CMatrix& M);

}  // namespace isoband
