#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcounter/report.hpp"

namespace qcounter::spectral {

using cplx = std::complex<double>;

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Power spectral profile over angular frequency. Gaussian and Lorentzian
/// profiles are unit-integral densities; `width` is the variance for a
/// Gaussian and the half-width for a Lorentzian.
class SpectralProfile {
 public:
  enum class Shape { gaussian, lorentzian, tabulated };

  static SpectralProfile gaussian(double center, double variance);
  static SpectralProfile lorentzian(double center, double half_width);
  /// Linear interpolation on an ascending grid, zero outside it. With
  /// `normalize` the values are rescaled to unit trapezoid integral.
  static SpectralProfile tabulated(std::vector<double> grid, std::vector<double> values, bool normalize = true);

  Shape shape() const { return shape_; }
  double center() const { return center_; }
  double width() const { return width_; }

  double operator()(double omega) const;

  /// Interval used for quadrature: +-k sigma (Gaussian), +-k_l half-widths
  /// (Lorentzian) or the table range.
  std::pair<double, double> support(double gaussian_sigmas = 6.0, double lorentzian_widths = 40.0) const;

  /// Probability mass outside `support`.
  double tail_mass(double gaussian_sigmas = 6.0, double lorentzian_widths = 40.0) const;

  /// Same shape with frequencies and widths multiplied by `factor`.
  SpectralProfile scaled(double factor) const;

 private:
  Shape shape_ = Shape::gaussian;
  double center_ = 0.0;
  double width_ = 1.0;
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Phi(w1, w2) = sqrt(F_p(w1 + w2)) phi(w1, w2). An explicit `kernel`
/// replaces that form entirely; its support must then be given.
struct JointAmplitude {
  SpectralProfile pump = SpectralProfile::gaussian(0.0, 1.0);
  std::function<cplx(double, double)> mismatch;
  std::function<cplx(double, double)> kernel;
  std::optional<std::pair<double, double>> kernel_support;

  cplx operator()(double w1, double w2) const;
};

struct QuadratureSpec {
  enum class Rule { tensor_gauss_legendre, adaptive };
  Rule rule = Rule::adaptive;
  double support_sigmas = 6.0;
  double lorentzian_widths = 40.0;
  int points = 96;
  double tolerance = 1e-8;
  int max_points = 384;

  void validate() const;
};

struct GammaResult {
  double gamma_numeric = 0.0;
  std::optional<double> gamma_closed;
  double abs_error_estimate = 0.0;
  double tail_mass = 0.0;
  int points = 0;
  std::optional<double> big_gamma2;
  std::optional<double> big_gamma_prime2;
  SpectralIntegrals integrals;
};

struct ClosedGamma {
  double gamma = 0.0;
  double big_gamma2 = 0.0;        ///< 1/Gamma^2 = 1/D_F^2 + 1/(2 D_p^2)
  double big_gamma_prime2 = 0.0;  ///< 1/Gamma'^2 = 1/Gamma^2 - Gamma^2/(4 D_p^4)
};

/// |xi(omega)|^2, the detection weight.
double filtered_weight(const SpectralProfile& filter, double omega);

/// 1/sqrt(1 + D_F^2/D_p^2) together with the Gamma intermediates.
ClosedGamma gamma_closed_form(double delta_f2, double delta_p2);

/// Gaussian-only double integral over (w, w'') with the centers shifted to 0.
GammaResult gamma_reduced_2d(const SpectralProfile& filter, const SpectralProfile& pump,
                             const QuadratureSpec& quad = {});

/// Fourfold exchange integral over the squared twofold normalization.
GammaResult gamma_general_4d(const SpectralProfile& filter, const JointAmplitude& jsa,
                             const QuadratureSpec& quad = {});

/// I_diag and I_cross for the same quadrature.
SpectralIntegrals spectral_integrals(const SpectralProfile& filter, const JointAmplitude& jsa,
                                     const QuadratureSpec& quad = {});

/// Product of the three factors, each in (0, 1].
double gamma_experiment_chain(double gamma_spectral, double shape_correction, double spatial_coupling);

namespace units {
inline constexpr double c = 299'792'458.0;
/// Small-bandwidth conversion of a wavelength FWHM to angular frequency (rad/s).
double fwhm_nm_to_angular(double fwhm_nm, double center_nm);
/// FWHM^2 / (8 ln 2).
double fwhm_to_variance(double fwhm);
double fwhm_to_half_width(double fwhm);
}  // namespace units

/// Composite Gauss-Legendre rule on [lo, hi] with 16-point panels.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureGrid gauss_legendre_grid(double lo, double hi, int points);

}  // namespace qcounter::spectral
