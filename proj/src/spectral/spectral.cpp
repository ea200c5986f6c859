#include "qcounter/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

namespace qcounter::spectral {

namespace {

constexpr int kPanelPoints = 16;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

double gaussian_density(double x, double variance) {
  return std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * M_PI * variance);
}

}  // namespace

SpectralProfile SpectralProfile::gaussian(double center, double variance) {
  require(variance > 0.0 && std::isfinite(variance), "gaussian profile: variance must be > 0");
  SpectralProfile p;
  p.shape_ = Shape::gaussian;
  p.center_ = center;
  p.width_ = variance;
  return p;
}

SpectralProfile SpectralProfile::lorentzian(double center, double half_width) {
  require(half_width > 0.0 && std::isfinite(half_width), "lorentzian profile: half-width must be > 0");
  SpectralProfile p;
  p.shape_ = Shape::lorentzian;
  p.center_ = center;
  p.width_ = half_width;
  return p;
}

SpectralProfile SpectralProfile::tabulated(std::vector<double> grid, std::vector<double> values, bool normalize) {
  require(grid.size() >= 2 && grid.size() == values.size(), "tabulated profile: need >= 2 matching points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    require(grid[i] > grid[i - 1], "tabulated profile: grid must be strictly ascending");
  }
  for (double v : values) require(v >= 0.0 && std::isfinite(v), "tabulated profile: values must be >= 0");
  if (normalize) {
    double area = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) area += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    require(area > 0.0, "tabulated profile: zero area");
    for (double& v : values) v /= area;
  }
  SpectralProfile p;
  p.shape_ = Shape::tabulated;
  p.center_ = 0.5 * (grid.front() + grid.back());
  p.width_ = grid.back() - grid.front();
  p.grid_ = std::move(grid);
  p.values_ = std::move(values);
  return p;
}

double SpectralProfile::operator()(double omega) const {
  switch (shape_) {
    case Shape::gaussian:
      return gaussian_density(omega - center_, width_);
    case Shape::lorentzian: {
      const double x = omega - center_;
      return width_ / (M_PI * (x * x + width_ * width_));
    }
    case Shape::tabulated: {
      if (!(omega >= grid_.front() && omega <= grid_.back())) return 0.0;
      auto it = std::upper_bound(grid_.begin(), grid_.end(), omega);
      if (it == grid_.end()) return values_.back();
      const auto i = static_cast<std::size_t>(it - grid_.begin());
      const double f = (omega - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
      return values_[i - 1] + f * (values_[i] - values_[i - 1]);
    }
  }
  return 0.0;
}

std::pair<double, double> SpectralProfile::support(double gaussian_sigmas, double lorentzian_widths) const {
  switch (shape_) {
    case Shape::gaussian: {
      const double h = gaussian_sigmas * std::sqrt(width_);
      return {center_ - h, center_ + h};
    }
    case Shape::lorentzian: {
      const double h = lorentzian_widths * width_;
      return {center_ - h, center_ + h};
    }
    case Shape::tabulated:
      break;
  }
  return {grid_.front(), grid_.back()};
}

double SpectralProfile::tail_mass(double gaussian_sigmas, double lorentzian_widths) const {
  switch (shape_) {
    case Shape::gaussian:
      return std::erfc(gaussian_sigmas / std::sqrt(2.0));
    case Shape::lorentzian:
      return 1.0 - 2.0 * std::atan(lorentzian_widths) / M_PI;
    case Shape::tabulated:
      break;
  }
  return 0.0;
}

SpectralProfile SpectralProfile::scaled(double factor) const {
  require(factor > 0.0, "scaled: factor must be > 0");
  switch (shape_) {
    case Shape::gaussian:
      return gaussian(center_ * factor, width_ * factor * factor);
    case Shape::lorentzian:
      return lorentzian(center_ * factor, width_ * factor);
    case Shape::tabulated:
      break;
  }
  std::vector<double> grid = grid_;
  std::vector<double> values = values_;
  for (double& g : grid) g *= factor;
  for (double& v : values) v /= factor;
  return tabulated(std::move(grid), std::move(values), false);
}

cplx JointAmplitude::operator()(double w1, double w2) const {
  if (kernel) return kernel(w1, w2);
  cplx amp = std::sqrt(pump(w1 + w2));
  if (mismatch) amp *= mismatch(w1, w2);
  return amp;
}

void QuadratureSpec::validate() const {
  require(points >= 8, "quadrature: points per axis must be >= 8");
  require(max_points >= points, "quadrature: max_points must be >= points");
  require(support_sigmas > 0.0 && lorentzian_widths > 0.0, "quadrature: support must be > 0");
  require(tolerance > 0.0, "quadrature: tolerance must be > 0");
}

QuadratureGrid gauss_legendre_grid(double lo, double hi, int points) {
  require(hi > lo, "gauss_legendre_grid: empty interval");
  using rule = boost::math::quadrature::gauss<double, kPanelPoints>;
  const int panels = std::max(1, (points + kPanelPoints - 1) / kPanelPoints);
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  QuadratureGrid grid;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (std::size_t i = x.size(); i-- > 0;) {
      grid.nodes.push_back(mid - half * x[i]);
      grid.weights.push_back(half * w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      grid.nodes.push_back(mid + half * x[i]);
      grid.weights.push_back(half * w[i]);
    }
  }
  return grid;
}

double filtered_weight(const SpectralProfile& filter, double omega) { return filter(omega); }

ClosedGamma gamma_closed_form(double delta_f2, double delta_p2) {
  require(delta_f2 > 0.0 && delta_p2 > 0.0, "gamma_closed_form: variances must be > 0");
  ClosedGamma out;
  out.big_gamma2 = 1.0 / (1.0 / delta_f2 + 1.0 / (2.0 * delta_p2));
  out.big_gamma_prime2 = 1.0 / (1.0 / out.big_gamma2 - out.big_gamma2 / (4.0 * delta_p2 * delta_p2));
  out.gamma = 1.0 / std::sqrt(1.0 + delta_f2 / delta_p2);
  return out;
}

namespace {

struct Estimate {
  double value;
  SpectralIntegrals integrals;
};

// Runs `eval` at increasing resolution. The adaptive rule doubles until two
// successive values agree; the tensor rule keeps the requested resolution and
// uses a doubled grid only to estimate its error.
template <class Eval>
std::pair<Estimate, double> converge(const QuadratureSpec& quad, Eval eval, int& points_used, const char* what) {
  quad.validate();
  if (quad.rule == QuadratureSpec::Rule::tensor_gauss_legendre) {
    Estimate base = eval(quad.points);
    Estimate refined = eval(2 * quad.points);
    double err = std::abs(base.value - refined.value);
    points_used = quad.points;
    if (err > quad.tolerance) {
      throw QuadratureError(std::string(what) + ": error estimate " + std::to_string(err) + " exceeds tolerance " +
                            std::to_string(quad.tolerance));
    }
    return {base, err};
  }
  int n = quad.points;
  Estimate prev = eval(n);
  while (true) {
    int next = 2 * n;
    if (next > quad.max_points) {
      throw QuadratureError(std::string(what) + ": no convergence to " + std::to_string(quad.tolerance) +
                            " within " + std::to_string(quad.max_points) + " points per axis");
    }
    Estimate cur = eval(next);
    double err = std::abs(cur.value - prev.value);
    if (err <= quad.tolerance) {
      points_used = next;
      return {cur, err};
    }
    prev = cur;
    n = next;
  }
}

std::pair<double, double> omega1_support(const JointAmplitude& jsa, std::pair<double, double> filter_support,
                                         const QuadratureSpec& quad) {
  if (jsa.kernel) {
    require(jsa.kernel_support.has_value(), "gamma_general_4d: explicit kernel needs kernel_support");
    return *jsa.kernel_support;
  }
  auto [pl, ph] = jsa.pump.support(quad.support_sigmas, quad.lorentzian_widths);
  return {pl - filter_support.second, ph - filter_support.first};
}

// Numerator sum_{w,w''} |xi|^2 |xi''|^2 |K(w,w'')|^2 with
// K(w,w'') = sum_{w1} Phi*(w1,w) Phi(w1,w''); the fourfold sum regroups
// exactly into this form. Denominator (sum_w |xi|^2 K(w,w))^2.
Estimate exchange_sum(const SpectralProfile& filter, const JointAmplitude& jsa, const QuadratureSpec& quad, int n) {
  const auto fs = filter.support(quad.support_sigmas, quad.lorentzian_widths);
  const auto ws = omega1_support(jsa, fs, quad);
  double len_f = fs.second - fs.first;
  double len_1 = ws.second - ws.first;
  double scale = len_f;
  if (!jsa.kernel) {
    auto ps = jsa.pump.support(quad.support_sigmas, quad.lorentzian_widths);
    scale = std::min(scale, ps.second - ps.first);
  }
  int n1 = static_cast<int>(std::ceil(n * std::min(16.0, std::max(1.0, len_1 / scale))));

  const QuadratureGrid g = gauss_legendre_grid(fs.first, fs.second, n);
  const QuadratureGrid g1 = gauss_legendre_grid(ws.first, ws.second, n1);
  const auto rows = static_cast<Eigen::Index>(g1.nodes.size());
  const auto cols = static_cast<Eigen::Index>(g.nodes.size());

  Eigen::VectorXd wf(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    wf[j] = g.weights[static_cast<std::size_t>(j)] * filter(g.nodes[static_cast<std::size_t>(j)]);
  }
  Eigen::MatrixXcd a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      a(k, j) = std::sqrt(g1.weights[static_cast<std::size_t>(k)]) *
                jsa(g1.nodes[static_cast<std::size_t>(k)], g.nodes[static_cast<std::size_t>(j)]);
    }
  }
  const Eigen::MatrixXcd kmat = a.adjoint() * a;

  double diag = 0.0;
  for (Eigen::Index j = 0; j < cols; ++j) diag += wf[j] * kmat(j, j).real();
  double cross = 0.0;
  for (Eigen::Index i = 0; i < cols; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) row += wf[j] * std::norm(kmat(i, j));
    cross += wf[i] * row;
  }
  if (!(diag > 0.0)) throw QuadratureError("gamma_general_4d: normalization integral vanishes");
  return {cross / (diag * diag), {diag, cross}};
}

bool is_gaussian(const SpectralProfile& p) { return p.shape() == SpectralProfile::Shape::gaussian; }

void check_range(double gamma, const char* what) {
  if (gamma > 1.0 + 1e-6 || gamma < -1e-9) {
    throw QuadratureError(std::string(what) + ": result " + std::to_string(gamma) + " outside [0, 1]");
  }
}

}  // namespace

GammaResult gamma_reduced_2d(const SpectralProfile& filter, const SpectralProfile& pump, const QuadratureSpec& quad) {
  require(is_gaussian(filter) && is_gaussian(pump), "gamma_reduced_2d: filter and pump must be Gaussian");
  const double df2 = filter.width();
  const double dp2 = pump.width();
  const double h = quad.support_sigmas * std::sqrt(df2);
  auto eval = [&](int n) {
    const QuadratureGrid g = gauss_legendre_grid(-h, h, n);
    double total = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double x = g.nodes[i];
      double row = 0.0;
      for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        const double y = g.nodes[j];
        row += g.weights[j] * std::exp(-y * y / (2.0 * df2) - (x - y) * (x - y) / (4.0 * dp2));
      }
      total += g.weights[i] * std::exp(-x * x / (2.0 * df2)) * row;
    }
    return Estimate{total / (2.0 * M_PI * df2), {}};
  };
  GammaResult out;
  auto [est, err] = converge(quad, eval, out.points, "gamma_reduced_2d");
  const ClosedGamma closed = gamma_closed_form(df2, dp2);
  out.gamma_numeric = est.value;
  out.gamma_closed = closed.gamma;
  out.big_gamma2 = closed.big_gamma2;
  out.big_gamma_prime2 = closed.big_gamma_prime2;
  out.abs_error_estimate = err;
  out.tail_mass = 2.0 * filter.tail_mass(quad.support_sigmas, quad.lorentzian_widths);
  check_range(out.gamma_numeric, "gamma_reduced_2d");
  return out;
}

GammaResult gamma_general_4d(const SpectralProfile& filter, const JointAmplitude& jsa, const QuadratureSpec& quad) {
  auto eval = [&](int n) { return exchange_sum(filter, jsa, quad, n); };
  GammaResult out;
  auto [est, err] = converge(quad, eval, out.points, "gamma_general_4d");
  out.gamma_numeric = est.value;
  out.integrals = est.integrals;
  out.abs_error_estimate = err;
  out.tail_mass = filter.tail_mass(quad.support_sigmas, quad.lorentzian_widths);
  if (!jsa.kernel) out.tail_mass += jsa.pump.tail_mass(quad.support_sigmas, quad.lorentzian_widths);
  if (!jsa.kernel && !jsa.mismatch && is_gaussian(filter) && is_gaussian(jsa.pump)) {
    const ClosedGamma closed = gamma_closed_form(filter.width(), jsa.pump.width());
    out.gamma_closed = closed.gamma;
    out.big_gamma2 = closed.big_gamma2;
    out.big_gamma_prime2 = closed.big_gamma_prime2;
  }
  check_range(out.gamma_numeric, "gamma_general_4d");
  return out;
}

SpectralIntegrals spectral_integrals(const SpectralProfile& filter, const JointAmplitude& jsa,
                                     const QuadratureSpec& quad) {
  return gamma_general_4d(filter, jsa, quad).integrals;
}

double gamma_experiment_chain(double gamma_spectral, double shape_correction, double spatial_coupling) {
  for (double f : {gamma_spectral, shape_correction, spatial_coupling}) {
    require(f > 0.0 && f <= 1.0, "gamma_experiment_chain: factors must lie in (0, 1]");
  }
  return gamma_spectral * shape_correction * spatial_coupling;
}

namespace units {

double fwhm_nm_to_angular(double fwhm_nm, double center_nm) {
  require(fwhm_nm > 0.0 && center_nm > 0.0, "fwhm_nm_to_angular: widths must be > 0");
  const double lambda = center_nm * 1e-9;
  return 2.0 * M_PI * c * (fwhm_nm * 1e-9) / (lambda * lambda);
}

double fwhm_to_variance(double fwhm) {
  require(fwhm > 0.0, "fwhm_to_variance: width must be > 0");
  return fwhm * fwhm / (8.0 * std::log(2.0));
}

double fwhm_to_half_width(double fwhm) {
  require(fwhm > 0.0, "fwhm_to_half_width: width must be > 0");
  return 0.5 * fwhm;
}

}  // namespace units

}  // namespace qcounter::spectral
