#include "htee/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace htee {

InterferenceNetwork::InterferenceNetwork(std::vector<double> alpha, std::vector<double> beta_row_major,
                                         std::vector<double> sigma2, double bandwidth)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta_row_major)),
      sigma2_(std::move(sigma2)),
      bandwidth_(bandwidth) {
  const std::size_t n = alpha_.size();
  if (n == 0) throw std::invalid_argument("InterferenceNetwork: no links");
  if (sigma2_.size() != n) throw std::invalid_argument("InterferenceNetwork: sigma2 size mismatch");
  if (beta_.size() != n * n) throw std::invalid_argument("InterferenceNetwork: beta must be n x n");
  if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_)) {
    throw std::invalid_argument("InterferenceNetwork: bandwidth must be positive");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(alpha_[i] > 0.0) || !std::isfinite(alpha_[i])) {
      throw std::invalid_argument("InterferenceNetwork: alpha must be positive");
    }
    if (!(sigma2_[i] > 0.0) || !std::isfinite(sigma2_[i])) {
      throw std::invalid_argument("InterferenceNetwork: sigma2 must be positive");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double b = beta_[i * n + j];
      if (!(b >= 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument("InterferenceNetwork: beta must be nonnegative");
      }
      if (i == j && b != 0.0) {
        throw std::invalid_argument("InterferenceNetwork: beta diagonal must be zero");
      }
    }
  }
}

double InterferenceNetwork::interference(std::span<const double> y, std::size_t i) const {
  const std::size_t n = size();
  const double* row = beta_.data() + i * n;
  double acc = sigma2_[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) acc += row[j] * y[j];
  }
  return acc;
}

void PowerModel::validate(std::size_t n) const {
  if (mu.size() != n) throw std::invalid_argument("PowerModel: mu size mismatch");
  for (double m : mu) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("PowerModel: mu must be >= 0");
  }
  if (!(p_static > 0.0) || !std::isfinite(p_static)) {
    throw std::invalid_argument("PowerModel: p_static must be > 0");
  }
}

double PowerModel::consumed(std::span<const double> p) const {
  double acc = p_static;
  for (std::size_t i = 0; i < mu.size(); ++i) acc += mu[i] * p[i];
  return acc;
}

namespace {

void check_power(const InterferenceNetwork& net, std::span<const double> p) {
  if (p.size() != net.size()) throw std::invalid_argument("power vector size mismatch");
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("power vector must be nonnegative");
  }
}

// log2(1 + alpha_i x_i / I_i(y)), rates in bit/s/Hz.
inline double spectral_rate(const InterferenceNetwork& net, std::span<const double> x,
                            std::span<const double> y, std::size_t i) {
  return std::log2(1.0 + net.alpha(i) * x[i] / net.interference(y, i));
}

// Sum of log2 terms taken as the log of a product: one log call per
// evaluation instead of n. The product is flushed before it can overflow.
inline double spectral_sum_rate(const InterferenceNetwork& net, std::span<const double> x,
                                std::span<const double> y) {
  double acc = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    prod *= 1.0 + net.alpha(i) * x[i] / net.interference(y, i);
    if (prod > 1e150) {
      acc += std::log2(prod);
      prod = 1.0;
    }
  }
  return acc + std::log2(prod);
}

// max_i { floor_i - R_i(y, x) }, floors in bit/s/Hz.
inline double qos_violation(const InterferenceNetwork& net, std::span<const double> floors,
                            std::span<const double> x, std::span<const double> y) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.size(); ++i) {
    worst = std::max(worst, floors[i] - spectral_rate(net, y, x, i));
  }
  return worst;
}

}  // namespace

double sinr(const InterferenceNetwork& net, std::span<const double> p, std::size_t i) {
  check_power(net, p);
  if (i >= net.size()) throw std::out_of_range("sinr: link index out of range");
  return net.alpha(i) * p[i] / net.interference(p, i);
}

double rate(const InterferenceNetwork& net, std::span<const double> p, std::size_t i) {
  return net.bandwidth() * std::log2(1.0 + sinr(net, p, i));
}

double sum_rate(const InterferenceNetwork& net, std::span<const double> p) {
  check_power(net, p);
  return net.bandwidth() * spectral_sum_rate(net, p, p);
}

double gee(const InterferenceNetwork& net, const PowerModel& pm, std::span<const double> p) {
  pm.validate(net.size());
  return sum_rate(net, p) / pm.consumed(p);
}

MMPair rate_mm(const InterferenceNetwork& net, std::size_t i) {
  if (i >= net.size()) throw std::out_of_range("rate_mm: link index out of range");
  auto shared = std::make_shared<const InterferenceNetwork>(net);
  return MMPair(net.size(), [shared, i](std::span<const double> x, std::span<const double> y) {
    return shared->bandwidth() * spectral_rate(*shared, x, y, i);
  });
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::TPmax: return "TPmax";
    case ProblemKind::GEEmax: return "GEEmax";
    case ProblemKind::PminHTEE: return "PminHTEE";
  }
  return "unknown";
}

void ProblemSpec::validate(std::size_t n) const {
  if (!r_min.empty() && r_min.size() != n) throw std::invalid_argument("ProblemSpec: r_min size mismatch");
  for (double r : r_min) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("ProblemSpec: r_min must be >= 0");
  }
  if (p_max.size() != n) throw std::invalid_argument("ProblemSpec: p_max size mismatch");
  for (double p : p_max) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("ProblemSpec: p_max must be > 0");
  }
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("ProblemSpec: omega must lie in [0, 1]");
  if (kind == ProblemKind::PminHTEE) {
    if (!r_star) throw std::invalid_argument("ProblemSpec: PminHTEE requires r_star (solve TPmax first)");
    if (!(*r_star >= 0.0) || !std::isfinite(*r_star)) {
      throw std::invalid_argument("ProblemSpec: r_star must be finite and >= 0");
    }
  } else if (r_star) {
    throw std::invalid_argument("ProblemSpec: r_star is only meaningful for PminHTEE");
  }
}

namespace {

// Search-coordinate geometry shared by the evaluators of one problem.
struct Geometry {
  InterferenceNetwork net;
  Coordinates coords;
  std::vector<double> scale;  // sigma2 / alpha
  std::vector<double> p_max;
  std::vector<double> z_max;  // LogSnr image of p_max; snaps back exactly

  void power(std::span<const double> z, double* p) const {
    if (coords == Coordinates::Power) {
      std::copy(z.begin(), z.end(), p);
      return;
    }
    for (std::size_t k = 0; k < z.size(); ++k) {
      p[k] = z[k] >= z_max[k] ? p_max[k] : std::min(p_max[k], scale[k] * std::expm1(z[k]));
    }
  }
};

double* scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  if (buf.size() < n) buf.resize(n);
  return buf.data();
}

// Mean-value bound on the diagonal over [r, s]: interval bounds on every
// partial derivative, expanded at the corner each monotone coordinate
// favours and at the midpoint otherwise. Second-order near interior optima,
// where the MM bound is only first-order. pm selects GEE instead of TP.
double mean_value_bound(const Geometry& g, const PowerModel* pm, std::span<const double> r,
                        std::span<const double> s) {
  const auto& net = g.net;
  const std::size_t n = net.size();
  thread_local std::vector<double> buf;
  buf.resize(11 * n);
  double* plo = buf.data();
  double* phi = plo + n;
  double* il = phi + n;
  double* ih = il + n;
  double* mag_lo = ih + n;
  double* mag_hi = mag_lo + n;
  double* glo = mag_hi + n;
  double* ghi = glo + n;
  double* c = ghi + n;
  double* pc = c + n;
  g.power(r, plo);
  g.power(s, phi);

  const std::span<const double> lo_span(plo, n), hi_span(phi, n);
  for (std::size_t i = 0; i < n; ++i) {
    il[i] = net.interference(lo_span, i);
    ih[i] = net.interference(hi_span, i);
    const double a = net.alpha(i);
    mag_hi[i] = a * phi[i] / (il[i] * (il[i] + a * phi[i]));
    mag_lo[i] = a * plo[i] / (ih[i] * (ih[i] + a * plo[i]));
  }
  constexpr double inv_ln2 = 1.4426950408889634;
  for (std::size_t k = 0; k < n; ++k) {
    double lo = net.alpha(k) / (ih[k] + net.alpha(k) * phi[k]);
    double hi = net.alpha(k) / (il[k] + net.alpha(k) * plo[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      lo -= net.beta(i, k) * mag_hi[i];
      hi -= net.beta(i, k) * mag_lo[i];
    }
    glo[k] = lo * inv_ln2;
    ghi[k] = hi * inv_ln2;
  }

  if (pm) {
    const double d_lo = pm->consumed(lo_span);
    const double d_hi = pm->consumed(hi_span);
    const double sr_lo = spectral_sum_rate(net, lo_span, hi_span);
    const double sr_hi = spectral_sum_rate(net, hi_span, lo_span);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = glo[k] / (glo[k] >= 0.0 ? d_hi : d_lo);
      const double b = ghi[k] / (ghi[k] >= 0.0 ? d_lo : d_hi);
      glo[k] = a - sr_hi * pm->mu[k] / (d_lo * d_lo);
      ghi[k] = b - sr_lo * pm->mu[k] / (d_hi * d_hi);
    }
  }

  // Chain rule: dp/dz = p + scale, within [plo + scale, phi + scale].
  if (g.coords == Coordinates::LogSnr) {
    for (std::size_t k = 0; k < n; ++k) {
      const double dl = plo[k] + g.scale[k];
      const double dh = phi[k] + g.scale[k];
      glo[k] *= glo[k] >= 0.0 ? dl : dh;
      ghi[k] *= ghi[k] >= 0.0 ? dh : dl;
    }
  }

  double slack = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (glo[k] >= 0.0) {
      c[k] = s[k];
    } else if (ghi[k] <= 0.0) {
      c[k] = r[k];
    } else {
      c[k] = 0.5 * (r[k] + s[k]);
      slack += 0.5 * (s[k] - r[k]) * std::max(-glo[k], ghi[k]);
    }
  }
  g.power({c, n}, pc);
  const std::span<const double> pcs(pc, n);
  double value = spectral_sum_rate(net, pcs, pcs);
  if (pm) value /= pm->consumed(pcs);
  return value + slack;
}

}  // namespace

std::vector<double> Problem::to_power(std::span<const double> point) const {
  std::vector<double> p(point.begin(), point.end());
  if (coordinates == Coordinates::LogSnr) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      p[k] = point[k] >= box.upper(k) ? p_max[k] : std::min(p_max[k], snr_scale[k] * std::expm1(point[k]));
    }
  }
  return p;
}

double Problem::from_power(std::size_t k, double p) const {
  return coordinates == Coordinates::LogSnr ? std::log1p(p / snr_scale[k]) : p;
}

bool reduce_power_sum(const Problem& problem, std::span<const double> lower, std::span<double> upper, double gamma) {
  const std::size_t n = lower.size();
  const bool warped = problem.coordinates == Coordinates::LogSnr;
  thread_local std::vector<double> lo;
  lo.resize(n);
  double lower_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!warped) {
      lo[i] = lower[i];
    } else {
      lo[i] = lower[i] >= problem.box.upper(i) ? problem.p_max[i]
                                               : std::min(problem.p_max[i], problem.snr_scale[i] * std::expm1(lower[i]));
    }
    lower_sum += lo[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double cap = gamma - (lower_sum - lo[i]);
    if (cap < lo[i]) return false;
    // One ulp of headroom so that rounding in the inverse map never cuts a
    // qualifying point; cap >= lo[i] keeps the edge at or above lower[i].
    if (cap < problem.p_max[i]) {
      const double edge = warped ? std::nextafter(problem.from_power(i, cap), INFINITY) : cap;
      upper[i] = std::max(lower[i], std::min(upper[i], edge));
    }
  }
  return true;
}

Problem build_problem(const InterferenceNetwork& net, const PowerModel& pm, const ProblemSpec& spec) {
  const std::size_t n = net.size();
  spec.validate(n);

  auto geo = std::make_shared<Geometry>(Geometry{net, spec.coordinates, {}, spec.p_max, {}});
  std::vector<double> upper = spec.p_max;
  if (spec.coordinates == Coordinates::LogSnr) {
    geo->scale.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      geo->scale[k] = net.sigma2(k) / net.alpha(k);
      upper[k] = std::log1p(spec.p_max[k] / geo->scale[k]);
    }
    geo->z_max = upper;
  }
  const double bw = net.bandwidth();
  auto floors = std::make_shared<std::vector<double>>(n, 0.0);
  if (!spec.r_min.empty()) {
    for (std::size_t i = 0; i < n; ++i) (*floors)[i] = spec.r_min[i] / bw;
  }

  // Evaluates fn(px, py) on the powers behind search points x, y.
  auto in_power = [geo, n](auto fn) {
    return [geo, n, fn](std::span<const double> x, std::span<const double> y) {
      if (geo->coords == Coordinates::Power) return fn(x, y);
      double* buf = scratch(2 * n);
      geo->power(x, buf);
      geo->power(y, buf + n);
      return fn(std::span<const double>(buf, n), std::span<const double>(buf + n, n));
    };
  };

  MMPair qos(n, in_power([geo, floors](std::span<const double> x, std::span<const double> y) {
    return qos_violation(geo->net, *floors, x, y);
  }));
  // All-zero floors can never be violated; a constant lets the maximizer skip them.
  const bool vacuous = std::all_of(floors->begin(), floors->end(), [](double f) { return f == 0.0; });
  if (vacuous && spec.kind != ProblemKind::PminHTEE) qos = MMPair::constant(n, 0.0);

  Problem out{spec.kind, Sense::Maximize, {}, {}, Box::from_origin(upper), bw, spec.coordinates, geo->scale, spec.p_max};
  switch (spec.kind) {
    case ProblemKind::TPmax: {
      out.objective = MMPair(n, in_power([geo](std::span<const double> x, std::span<const double> y) {
        return spectral_sum_rate(geo->net, x, y);
      }));
      if (spec.refine_bounds) {
        out.objective.set_upper_refinement([geo](std::span<const double> r, std::span<const double> s) {
          return mean_value_bound(*geo, nullptr, r, s);
        });
      }
      out.constraint = std::move(qos);
      return out;
    }
    case ProblemKind::GEEmax: {
      pm.validate(n);
      auto power = std::make_shared<const PowerModel>(pm);
      out.objective = MMPair(n, in_power([geo, power](std::span<const double> x, std::span<const double> y) {
        return spectral_sum_rate(geo->net, x, y) / power->consumed(y);
      }));
      if (spec.refine_bounds) {
        out.objective.set_upper_refinement([geo, power](std::span<const double> r, std::span<const double> s) {
          return mean_value_bound(*geo, power.get(), r, s);
        });
      }
      out.constraint = std::move(qos);
      return out;
    }
    case ProblemKind::PminHTEE: {
      const double target = spec.omega * *spec.r_star / bw;
      out.sense = Sense::Minimize;
      out.objective = MMPair(n, in_power([](std::span<const double> x, std::span<const double>) {
        return std::accumulate(x.begin(), x.end(), 0.0);
      }));
      out.constraint = MMPair(n, in_power([geo, floors, target](std::span<const double> x, std::span<const double> y) {
        return std::max(target - spectral_sum_rate(geo->net, y, x), qos_violation(geo->net, *floors, x, y));
      }));
      if (spec.refine_bounds) {
        out.constraint.set_lower_refinement([geo, target](std::span<const double> r, std::span<const double> s) {
          return target - mean_value_bound(*geo, nullptr, r, s);
        });
      }
      return out;
    }
  }
  throw std::logic_error("build_problem: unknown problem kind");
}

}  // namespace htee
