#pragma once

#include <memory>
#include <string>
#include <vector>

#include "critjac/eikonal.hpp"

namespace critjac {

struct AsymptoticDescriptor {
  double sigma = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
};

// a(n) ~ n^sigma (1 + alpha/n), b(n) ~ 2 gamma n^sigma (1 + beta/n).
class CoefficientModel {
 public:
  enum class Kind { laguerre, power, table };

  double a(long n) const;
  double b(long n) const;

  Kind kind() const { return kind_; }
  const AsymptoticDescriptor& descriptor() const { return desc_; }
  double laguerre_p() const { return p_; }
  bool reflected() const { return b_sign_ < 0.0; }
  std::string describe() const;

  friend CoefficientModel laguerre_model(double p);
  friend CoefficientModel power_model(double sigma, double alpha, double beta, double gamma);
  friend CoefficientModel table_model(std::vector<double> a, std::vector<double> b,
                                      const AsymptoticDescriptor& desc);
  friend CoefficientModel reflect(const CoefficientModel& model);

 private:
  CoefficientModel() = default;

  double power_a(long n) const;
  double power_b(long n) const;

  Kind kind_ = Kind::power;
  AsymptoticDescriptor desc_;
  double p_ = 0.0;
  double b_sign_ = 1.0;
  std::shared_ptr<const std::vector<double>> table_a_;
  std::shared_ptr<const std::vector<double>> table_b_;
};

CoefficientModel laguerre_model(double p);
CoefficientModel power_model(double sigma, double alpha, double beta, double gamma);
// Entries past the end of the arrays continue with the power-model form of the descriptor.
CoefficientModel table_model(std::vector<double> a, std::vector<double> b, const AsymptoticDescriptor& desc);
CoefficientModel reflect(const CoefficientModel& model);

// Largest |a(n) n^{-sigma} - 1 - alpha/n| n^2 over n in [n_lo, n_hi] (log-spaced samples).
double descriptor_deviation(const CoefficientModel& model, long n_lo, long n_hi, int samples = 64);

// Open interval of the absolutely continuous spectrum.
struct AcSet {
  enum class Kind { empty, whole_line, half_line };
  Kind kind = Kind::empty;
  double threshold = 0.0;
  int direction = 1;  // +1: (threshold, inf); -1: (-inf, threshold)

  bool contains(double lambda) const;
  bool closure_contains(double lambda) const;
  std::string to_string() const;
};

enum class Regime { above_one_tau_negative, above_one_tau_positive, below_one, at_one };

struct CriticalParams {
  int gamma = 1;
  double sigma = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  double rho = 0.0;
  double nu = 0.0;
  double delta = 0.0;
  double varsigma = 0.0;
  int L = 1;
  std::vector<Rational> p;       // p_2..p_L
  std::vector<double> p_values;  // same, rounded
  Rational rho_exact;
  Rational varsigma_exact;
  bool log_phase = false;  // sigma = 3/2: phase grows like ln n
  Regime regime = Regime::at_one;
  AcSet ac_set;
  std::string spectrum_case;
  std::string notes;
};

CriticalParams classify(const AsymptoticDescriptor& desc);
CriticalParams classify(const CoefficientModel& model);

std::string to_string(Regime regime);

}  // namespace critjac
