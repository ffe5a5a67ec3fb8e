#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (p <= 0, |w| >= 1, empty input, ...).
class domain_error : public error {
 public:
  using error::error;
};

class dimension_error : public error {
 public:
  using error::error;
};

class not_hermitian_error : public error {
 public:
  not_hermitian_error(const std::string& what, double defect) : error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class not_psd_error : public error {
 public:
  not_psd_error(const std::string& what, double min_eigenvalue)
      : error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double residual) : error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Vector family whose frame operator is numerically singular.
class not_a_frame_error : public error {
 public:
  not_a_frame_error(const std::string& what, double lambda_min)
      : error(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

}  // namespace framelab
