#include "grwsym/chart.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "grwsym/errors.hpp"

namespace grwsym {

namespace {

using Eigen::MatrixXd;

void require_dim(const MetricField& m, std::span<const double> p) {
  if (p.size() != m.dim()) throw GeometryError("point dimension does not match chart dimension");
}

/// Metric value and coordinate derivatives at a point, all from jets.
struct MetricDerivs {
  std::size_t n = 0;
  MatrixXd g, ginv;
  std::vector<MatrixXd> dg;                 // dg[k] = d_k g
  std::vector<std::vector<MatrixXd>> ddg;   // ddg[k][l] = d_k d_l g
};

std::vector<Jet3> seeded(std::span<const double> p, std::span<const double> dir) {
  std::vector<Jet3> s(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) s[i] = Jet3(p[i], dir[i], 0.0, 0.0);
  return s;
}

// Upper-triangle component jets along `dir`, mirrored.
std::vector<std::vector<Jet3>> component_jets(const MetricField& m, std::span<const double> p, std::span<const double> dir) {
  const std::size_t n = m.dim();
  auto slots = seeded(p, dir);
  std::vector<std::vector<Jet3>> out(n, std::vector<Jet3>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out[i][j] = out[j][i] = m.components[i][j].eval(std::span<const Jet3>(slots));
  return out;
}

MatrixXd metric_matrix(const MetricField& m, std::span<const double> p) {
  require_dim(m, p);
  const std::size_t n = m.dim();
  MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = m.components[i][j].eval(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(g(i, j) - g(j, i)) >= 1e-12) throw GeometryError("metric components are not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int negatives = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (!std::isfinite(ev(i))) throw GeometryError("metric is not finite");
    if (std::abs(ev(i)) < 1e-13 * scale) throw GeometryError("singular metric");
    if (ev(i) < 0.0) ++negatives;
  }
  const auto declared = std::count(m.signature.begin(), m.signature.end(), -1);
  if (negatives != declared) throw GeometryError("metric signature does not match the declared signature");
  return g;
}

MetricDerivs derivs(const MetricField& m, std::span<const double> p, int order) {
  MetricDerivs d;
  const std::size_t n = m.dim();
  d.n = n;
  d.g = metric_matrix(m, p);
  d.ginv = d.g.inverse();
  if (order < 1) return d;
  d.dg.assign(n, MatrixXd::Zero(n, n));
  d.ddg.assign(n, std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
  std::vector<double> dir(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(dir.begin(), dir.end(), 0.0);
    dir[k] = 1.0;
    auto jets = component_jets(m, p, dir);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        d.dg[k](i, j) = jets[i][j].d1;
        d.ddg[k][k](i, j) = jets[i][j].d2;
      }
  }
  if (order < 2) return d;
  // Mixed second partials by polarization of directional second derivatives.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      std::fill(dir.begin(), dir.end(), 0.0);
      dir[k] = dir[l] = 1.0;
      auto jets = component_jets(m, p, dir);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double mixed = 0.5 * (jets[i][j].d2 - d.ddg[k][k](i, j) - d.ddg[l][l](i, j));
          d.ddg[k][l](i, j) = d.ddg[l][k](i, j) = mixed;
        }
    }
  return d;
}

TensorValue christoffel_from(const MetricDerivs& d) {
  const std::size_t n = d.n;
  TensorValue gamma(n, {Variance::Upper, Variance::Lower, Variance::Lower});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += d.ginv(k, l) * (d.dg[i](j, l) + d.dg[j](i, l) - d.dg[l](i, j));
        gamma(k, i, j) = gamma(k, j, i) = 0.5 * s;
      }
  return gamma;
}

TensorValue riemann_mixed_from(const MetricDerivs& d) {
  const std::size_t n = d.n;
  const TensorValue gamma = christoffel_from(d);
  // dgamma[m](k, i, j) = d_m Gamma^k_ij
  std::vector<TensorValue> dgamma(n, TensorValue(n, {Variance::Upper, Variance::Lower, Variance::Lower}));
  for (std::size_t m = 0; m < n; ++m) {
    const MatrixXd dginv = -d.ginv * d.dg[m] * d.ginv;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          double s = 0.0;
          for (std::size_t l = 0; l < n; ++l) {
            const double first = d.dg[i](j, l) + d.dg[j](i, l) - d.dg[l](i, j);
            const double second = d.ddg[m][i](j, l) + d.ddg[m][j](i, l) - d.ddg[m][l](i, j);
            s += dginv(k, l) * first + d.ginv(k, l) * second;
          }
          dgamma[m](k, i, j) = dgamma[m](k, j, i) = 0.5 * s;
        }
  }
  TensorValue r(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          double s = dgamma[c](a, e, b) - dgamma[e](a, c, b);
          for (std::size_t q = 0; q < n; ++q) s += gamma(a, c, q) * gamma(q, e, b) - gamma(a, e, q) * gamma(q, c, b);
          r(a, b, c, e) = s;
        }
  return r;
}

TensorValue lower_riemann(const MetricDerivs& d, const TensorValue& mixed) {
  const std::size_t n = d.n;
  TensorValue r = TensorValue::covariant(n, 4);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          double s = 0.0;
          for (std::size_t a = 0; a < n; ++a) s += d.g(l, a) * mixed(a, k, i, j);
          r(i, j, k, l) = s;
        }
  return r;
}

TensorValue ricci_from_mixed(const TensorValue& mixed) {
  const std::size_t n = mixed.dim();
  TensorValue ric = TensorValue::covariant(n, 2);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t a = 0; a < n; ++a) s += mixed(a, k, a, j);
      ric(j, k) = s;
    }
  return ric;
}

TensorValue to_tensor(const MatrixXd& mat, std::vector<Variance> var) {
  TensorValue t(static_cast<std::size_t>(mat.rows()), std::move(var));
  for (Eigen::Index i = 0; i < mat.rows(); ++i)
    for (Eigen::Index j = 0; j < mat.cols(); ++j) t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = mat(i, j);
  return t;
}

TensorValue cov_deriv_from(const TensorValue& gamma, const FieldJet& z) {
  const std::size_t n = gamma.dim();
  TensorValue dz(n, {Variance::Lower, Variance::Upper});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = z.jac[i][j];
      for (std::size_t k = 0; k < n; ++k) s += gamma(j, i, k) * z.value[k];
      dz(i, j) = s;
    }
  return dz;
}

std::vector<double> acceleration(const MetricField& m, std::span<const double> x, std::span<const double> v) {
  const TensorValue gamma = christoffel_at(m, x);
  const std::size_t n = m.dim();
  std::vector<double> a(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[k] -= gamma(k, i, j) * v[i] * v[j];
  return a;
}

}  // namespace

MetricField MetricField::from_strings(std::vector<std::string> coords, const std::vector<std::vector<std::string>>& rows,
                                      std::vector<int> signature) {
  const std::size_t n = coords.size();
  if (rows.size() != n || signature.size() != n) throw GeometryError("metric component table does not match coordinate count");
  MetricField m;
  m.components.assign(n, std::vector<ScalarExpr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw GeometryError("metric component row has wrong length");
    for (std::size_t j = 0; j < n; ++j) m.components[i][j] = parse_expr(rows[i][j], coords);
  }
  m.coords = std::move(coords);
  m.signature = std::move(signature);
  return m;
}

MetricField MetricField::diagonal(std::vector<std::string> coords, const std::vector<std::string>& diag, std::vector<int> signature) {
  std::vector<std::vector<std::string>> rows(coords.size(), std::vector<std::string>(coords.size(), "0"));
  for (std::size_t i = 0; i < coords.size() && i < diag.size(); ++i) rows[i][i] = diag[i];
  if (diag.size() != coords.size()) throw GeometryError("diagonal length does not match coordinate count");
  return from_strings(std::move(coords), rows, std::move(signature));
}

VectorFieldSpec VectorFieldSpec::from_strings(const std::vector<std::string>& comps, const std::vector<std::string>& coords) {
  if (comps.size() != coords.size()) throw GeometryError("vector field component count does not match chart dimension");
  VectorFieldSpec v;
  for (const auto& c : comps) v.components.push_back(parse_expr(c, coords));
  return v;
}

VectorFieldSpec VectorFieldSpec::zero(const std::vector<std::string>& coords) {
  VectorFieldSpec v;
  v.components.assign(coords.size(), ScalarExpr::constant(0.0, coords));
  return v;
}

FieldJet field_jet_at(const VectorFieldSpec& v, std::span<const double> p) {
  const std::size_t n = p.size();
  if (v.dim() != n) throw GeometryError("vector field dimension does not match point");
  FieldJet out;
  out.value.assign(n, 0.0);
  out.jac.assign(n, std::vector<double>(n, 0.0));
  std::vector<double> dir(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(dir.begin(), dir.end(), 0.0);
    dir[i] = 1.0;
    auto slots = seeded(p, dir);
    for (std::size_t j = 0; j < n; ++j) {
      const Jet3 c = v.components[j].eval(std::span<const Jet3>(slots));
      out.value[j] = c.v;
      out.jac[i][j] = c.d1;
    }
  }
  return out;
}

std::vector<double> field_at(const VectorFieldSpec& v, std::span<const double> p) {
  if (v.dim() != p.size()) throw GeometryError("vector field dimension does not match point");
  std::vector<double> out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) out[j] = v.components[j].eval(p);
  return out;
}

TensorValue metric_at(const MetricField& m, std::span<const double> p) {
  return to_tensor(metric_matrix(m, p), {Variance::Lower, Variance::Lower});
}

TensorValue inverse_metric_at(const MetricField& m, std::span<const double> p) {
  return to_tensor(metric_matrix(m, p).inverse(), {Variance::Upper, Variance::Upper});
}

TensorValue christoffel_at(const MetricField& m, std::span<const double> p) { return christoffel_from(derivs(m, p, 1)); }

TensorValue riemann_mixed_at(const MetricField& m, std::span<const double> p) { return riemann_mixed_from(derivs(m, p, 2)); }

TensorValue riemann_at(const MetricField& m, std::span<const double> p) {
  const MetricDerivs d = derivs(m, p, 2);
  return lower_riemann(d, riemann_mixed_from(d));
}

TensorValue ricci_at(const MetricField& m, std::span<const double> p) { return ricci_from_mixed(riemann_mixed_at(m, p)); }

double scalar_curvature_at(const MetricField& m, std::span<const double> p) {
  const MetricDerivs d = derivs(m, p, 2);
  const TensorValue ric = ricci_from_mixed(riemann_mixed_from(d));
  double s = 0.0;
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j) s += d.ginv(i, j) * ric(i, j);
  return s;
}

TensorValue cov_deriv_vector_at(const MetricField& m, const VectorFieldSpec& zeta, std::span<const double> p) {
  return cov_deriv_from(christoffel_at(m, p), field_jet_at(zeta, p));
}

TensorValue lie_metric_at(const MetricField& m, const VectorFieldSpec& zeta, std::span<const double> p) {
  const MetricDerivs d = derivs(m, p, 1);
  const TensorValue dz = cov_deriv_from(christoffel_from(d), field_jet_at(zeta, p));
  const std::size_t n = d.n;
  TensorValue l = TensorValue::covariant(n, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += dz(i, k) * d.g(k, j) + dz(j, k) * d.g(i, k);
      l(i, j) = s;
    }
  return l;
}

TensorValue lie_tensor_at(const MetricField& m, const VectorFieldSpec& zeta, const TensorFieldFn& tensor,
                          std::span<const double> p, double fd_step) {
  require_dim(m, p);
  const std::size_t n = m.dim();
  const FieldJet z = field_jet_at(zeta, p);
  TensorValue t0 = tensor(p);
  const std::size_t rank = t0.rank();
  TensorValue out = t0;
  for (double& v : out.entries()) v = 0.0;

  double znorm = 0.0;
  for (double c : z.value) znorm = std::max(znorm, std::abs(c));
  if (znorm > 0.0) {
    double pscale = 1.0;
    for (double c : p) pscale = std::max(pscale, std::abs(c));
    const double h = fd_step * pscale;
    auto shifted = [&](double s) {
      std::vector<double> q(p.begin(), p.end());
      for (std::size_t i = 0; i < n; ++i) q[i] += s * z.value[i] / znorm;
      return tensor(q);
    };
    const TensorValue p1 = shifted(h), m1 = shifted(-h), p2 = shifted(2 * h), m2 = shifted(-2 * h);
    for (std::size_t e = 0; e < out.entries().size(); ++e)
      out.entries()[e] = znorm * (-p2.entries()[e] + 8.0 * p1.entries()[e] - 8.0 * m1.entries()[e] + m2.entries()[e]) / (12.0 * h);
  }

  // + sum over slots of T(.., d_a zeta^c d_c, ..)
  const std::size_t total = out.entries().size();
  std::vector<std::size_t> idx(rank);
  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t s = rank; s-- > 1;) stride[s - 1] = stride[s] * n;
  for (std::size_t e = 0; e < total; ++e) {
    std::size_t rem = e;
    for (std::size_t s = 0; s < rank; ++s) {
      idx[s] = rem / stride[s];
      rem %= stride[s];
    }
    double acc = 0.0;
    for (std::size_t s = 0; s < rank; ++s) {
      const std::size_t base = e - idx[s] * stride[s];
      for (std::size_t c = 0; c < n; ++c) acc += t0.entries()[base + c * stride[s]] * z.jac[idx[s]][c];
    }
    out.entries()[e] += acc;
  }
  return out;
}

TensorValue hessian_at(const MetricField& m, const ScalarExpr& u, std::span<const double> p) {
  require_dim(m, p);
  const std::size_t n = m.dim();
  const TensorValue gamma = christoffel_at(m, p);
  std::vector<double> grad(n), diag(n), dir(n);
  TensorValue h = TensorValue::covariant(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(dir.begin(), dir.end(), 0.0);
    dir[i] = 1.0;
    auto slots = seeded(p, dir);
    const Jet3 j = u.eval(std::span<const Jet3>(slots));
    grad[i] = j.d1;
    diag[i] = h(i, i) = j.d2;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      std::fill(dir.begin(), dir.end(), 0.0);
      dir[i] = dir[k] = 1.0;
      auto slots = seeded(p, dir);
      const Jet3 j = u.eval(std::span<const Jet3>(slots));
      h(i, k) = h(k, i) = 0.5 * (j.d2 - diag[i] - diag[k]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) h(i, j) -= gamma(k, i, j) * grad[k];
  return h;
}

double laplacian_at(const MetricField& m, const ScalarExpr& u, std::span<const double> p) {
  const TensorValue h = hessian_at(m, u, p);
  const TensorValue ginv = inverse_metric_at(m, p);
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s += ginv(i, j) * h(i, j);
  return s;
}

double sectional_curvature_at(const MetricField& m, std::span<const double> p, std::span<const double> x,
                              std::span<const double> y, double min_gram) {
  const MetricDerivs d = derivs(m, p, 2);
  const TensorValue r = lower_riemann(d, riemann_mixed_from(d));
  const std::size_t n = d.n;
  double gxx = 0, gyy = 0, gxy = 0, num = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gxx += d.g(i, j) * x[i] * x[j];
      gyy += d.g(i, j) * y[i] * y[j];
      gxy += d.g(i, j) * x[i] * y[j];
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) num += r(i, j, k, l) * x[i] * y[j] * y[k] * x[l];
  const double gram = gxx * gyy - gxy * gxy;
  if (std::abs(gram) < min_gram) throw GeometryError("degenerate plane for sectional curvature");
  return num / gram;
}

Trajectory integrate_geodesic(const MetricField& m, std::span<const double> p0, std::span<const double> v0, int steps,
                              double dt) {
  require_dim(m, p0);
  const std::size_t n = m.dim();
  Trajectory traj;
  traj.dt = dt;
  std::vector<double> x(p0.begin(), p0.end()), v(v0.begin(), v0.end());
  traj.samples.push_back({x, v});
  auto axpy = [n](const std::vector<double>& a, double s, const std::vector<double>& b) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  try {
    for (int step = 0; step < steps; ++step) {
      const auto k1x = v;
      const auto k1v = acceleration(m, x, v);
      const auto x2 = axpy(x, 0.5 * dt, k1x), v2 = axpy(v, 0.5 * dt, k1v);
      const auto k2v = acceleration(m, x2, v2);
      const auto x3 = axpy(x, 0.5 * dt, v2), v3 = axpy(v, 0.5 * dt, k2v);
      const auto k3v = acceleration(m, x3, v3);
      const auto x4 = axpy(x, dt, v3), v4 = axpy(v, dt, k3v);
      const auto k4v = acceleration(m, x4, v4);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += dt / 6.0 * (k1x[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
        v[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
      }
      for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(v[i])) throw GeometryError("geodesic state became non-finite");
      metric_matrix(m, x);  // validates the new point against the chart domain
      traj.samples.push_back({x, v});
    }
  } catch (const Error& e) {
    traj.aborted = true;
    traj.error = e.what();
  }
  return traj;
}

double jacobi_residual(const MetricField& m, const Trajectory& geodesic, const std::vector<std::vector<double>>& j_samples) {
  const std::size_t count = geodesic.samples.size();
  if (count < 5 || j_samples.size() != count) throw GeometryError("trajectory too short for second differences (need >= 5 samples)");
  const std::size_t n = m.dim();
  const double dt = geodesic.dt;
  const bool wide = count >= 9;
  const std::size_t margin = wide ? 2 : 1;
  auto derivative = [&](const std::vector<std::vector<double>>& f, std::size_t i) {
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k)
      d[k] = wide ? (-f[i + 2][k] + 8.0 * f[i + 1][k] - 8.0 * f[i - 1][k] + f[i - 2][k]) / (12.0 * dt)
                  : (f[i + 1][k] - f[i - 1][k]) / (2.0 * dt);
    return d;
  };
  std::vector<TensorValue> gammas(count);
  for (std::size_t i = 0; i < count; ++i) gammas[i] = christoffel_at(m, geodesic.samples[i].point);
  auto covariant = [&](const std::vector<double>& dv, const std::vector<double>& v, std::size_t i) {
    std::vector<double> out = dv;
    const auto& u = geodesic.samples[i].velocity;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out[k] += gammas[i](k, a, b) * u[a] * v[b];
    return out;
  };
  std::vector<std::vector<double>> first(count, std::vector<double>(n, 0.0));
  for (std::size_t i = margin; i + margin < count; ++i) first[i] = covariant(derivative(j_samples, i), j_samples[i], i);
  double worst = 0.0;
  for (std::size_t i = 2 * margin; i + 2 * margin < count; ++i) {
    auto second = covariant(derivative(first, i), first[i], i);
    const TensorValue r = riemann_mixed_at(m, geodesic.samples[i].point);
    const auto& u = geodesic.samples[i].velocity;
    const auto& j = j_samples[i];
    for (std::size_t a = 0; a < n; ++a) {
      double s = second[a];
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t d = 0; d < n; ++d) s += r(a, b, c, d) * u[b] * j[c] * u[d];
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

double jacobi_residual(const MetricField& m, const Trajectory& geodesic, const VectorFieldSpec& j) {
  std::vector<std::vector<double>> samples;
  samples.reserve(geodesic.samples.size());
  for (const auto& s : geodesic.samples) samples.push_back(field_at(j, s.point));
  return jacobi_residual(m, geodesic, samples);
}

}  // namespace grwsym
