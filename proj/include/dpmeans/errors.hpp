#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dpmeans {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// 1 + w f(x) vanishes on a set of positive mass.
class SingularInput : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature ran out of subdivisions; carries the best estimate.
class ToleranceFailure : public Error {
public:
    ToleranceFailure(const std::string& what, cplx best, double err)
        : Error(what), best_(best), err_(err) {}
    cplx best_estimate() const { return best_; }
    double err_est() const { return err_; }

private:
    cplx best_;
    double err_;
};

// The epsilon extrapolation or a truncation sequence did not settle.
class LimitFailure : public Error {
public:
    LimitFailure(const std::string& what, cplx last, cplx previous)
        : Error(what), last_(last), previous_(previous) {}
    cplx last() const { return last_; }
    cplx previous() const { return previous_; }

private:
    cplx last_;
    cplx previous_;
};

// Input outside the admissible class (infinite log moment, degenerate measure, ...).
class Refused : public Error {
public:
    using Error::Error;
};

// Evaluation point too close to the boundary of the convex hull of the support.
class BoundaryError : public Refused {
public:
    using Refused::Refused;
};

// Quadrature could not decide convergence of a tail integral.
class Indeterminate : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace dpmeans
