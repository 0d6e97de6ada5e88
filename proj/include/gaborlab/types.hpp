#ifndef GABORLAB_TYPES_HPP
#define GABORLAB_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaborlab {

using Index = Eigen::Index;
using Real = double;
using Complex = std::complex<Real>;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Real kPi = 3.14159265358979323846264338327950288;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Lattice steps that do not divide the torus side.
class InvalidLattice : public Error {
  public:
    using Error::Error;
};

class BoxTooLarge : public Error {
  public:
    using Error::Error;
};

class SizeMismatch : public Error {
  public:
    using Error::Error;
};

/// Lower frame bound indistinguishable from zero.
class NotAFrame : public Error {
  public:
    NotAFrame(const std::string &what, Real lower, Real upper)
        : Error(what), lower_(lower), upper_(upper)
    {
    }
    Real lower() const { return lower_; }
    Real upper() const { return upper_; }

  private:
    Real lower_;
    Real upper_;
};

/// Iterative eigenvalue estimate that did not reach its residual target.
/// Carries the last Ritz values so callers can judge how far off they were.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, std::vector<Real> ritz)
        : Error(what), ritz_(std::move(ritz))
    {
    }
    const std::vector<Real> &ritz_values() const { return ritz_; }

  private:
    std::vector<Real> ritz_;
};

class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace gaborlab

#endif
