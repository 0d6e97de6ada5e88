#ifndef GABORLAB_LINALG_HPP
#define GABORLAB_LINALG_HPP

// Small expression-friendly helpers over Eigen dense types. Families of
// vectors are stored column-wise: column i of a d x n matrix is f_i.

#include <gaborlab/types.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace gaborlab {

/// <u, v> = sum_n u[n] conj(v[n]), linear in the first slot.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar inner(const Eigen::MatrixBase<DerivedU> &u,
                                const Eigen::MatrixBase<DerivedV> &v)
{
    return v.dot(u);
}

/// Entry (i, j) is <f_i, e_j>.
template <typename DerivedF, typename DerivedE>
Eigen::Matrix<typename DerivedF::Scalar, Eigen::Dynamic, Eigen::Dynamic>
cross_gram(const Eigen::MatrixBase<DerivedF> &F, const Eigen::MatrixBase<DerivedE> &E)
{
    if (F.rows() != E.rows())
        throw SizeMismatch("cross_gram: families live in spaces of different dimension");
    return (E.adjoint() * F).transpose();
}

/// Entry (i, j) is <f_i, f_j>.
template <typename DerivedF>
Eigen::Matrix<typename DerivedF::Scalar, Eigen::Dynamic, Eigen::Dynamic>
gram(const Eigen::MatrixBase<DerivedF> &F)
{
    return cross_gram(F, F);
}

/// S = sum_i f_i f_i^*.
template <typename DerivedF>
Eigen::Matrix<typename DerivedF::Scalar, Eigen::Dynamic, Eigen::Dynamic>
frame_operator_of(const Eigen::MatrixBase<DerivedF> &F)
{
    return F * F.adjoint();
}

struct SpectralBounds {
    Real lower = 0;
    Real upper = 0;
};

/// Extreme eigenvalues of a Hermitian matrix.
template <typename Derived>
SpectralBounds hermitian_extremes(const Eigen::MatrixBase<Derived> &H)
{
    if (H.rows() == 0)
        return {};
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                                                Eigen::Dynamic>>
        es(H, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

/// Extreme singular values of a (square or rectangular) matrix.
template <typename Derived>
SpectralBounds singular_extremes(const Eigen::MatrixBase<Derived> &M)
{
    if (M.size() == 0)
        return {};
    Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>>
        svd(M);
    const auto &sv = svd.singularValues();
    return {sv(sv.size() - 1), sv(0)};
}

/// Frame bounds of the columns of F, i.e. extreme eigenvalues of F F^*.
/// An empty family has bounds (0, 0).
template <typename DerivedF>
SpectralBounds frame_bounds_of(const Eigen::MatrixBase<DerivedF> &F)
{
    if (F.cols() == 0)
        return {};
    auto b = hermitian_extremes(frame_operator_of(F));
    b.lower = std::max<Real>(b.lower, 0);
    return b;
}

} // namespace gaborlab

#endif
