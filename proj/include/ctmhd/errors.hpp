#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace ctmhd {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a state leaves the admissible set (rho <= 0, non-finite values).
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(const std::string& what, std::array<int, 3> cell)
      : std::runtime_error(what), cell_(cell) {}
  std::array<int, 3> cell() const { return cell_; }

 private:
  std::array<int, 3> cell_;
};

// Realized Courant number exceeded 1; the caller should retry with a smaller dt.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string& what, double courant)
      : std::runtime_error(what), courant_(courant) {}
  double courant() const { return courant_; }

 private:
  double courant_;
};

}  // namespace ctmhd
