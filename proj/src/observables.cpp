#include "wpfp/observables.hpp"

#include <cmath>

#include "wpfp/errors.hpp"

namespace wpfp {

LocalMoments local_moments(const WignerField& w, const std::vector<double>& v_samples,
                           double alpha_tilde) {
  const GridSpec& g = *w.grid;
  if (static_cast<int>(v_samples.size()) != g.M)
    throw config_error("local_moments: potential sample length does not match the grid");

  LocalMoments out;
  out.rho.resize(g.M);
  out.j.resize(g.M);
  out.e.resize(g.M);
  for (int m = 0; m < g.M; ++m) {
    const double* row = &w.values[static_cast<std::size_t>(m) * g.N];
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int l = 0; l < g.N; ++l) {
      s0 += row[l];
      s1 += g.xi[l] * row[l];
      s2 += 0.5 * g.xi[l] * g.xi[l] * row[l];
    }
    out.rho[m] = g.hxi * s0;
    out.j[m] = g.hxi * s1;
    out.e[m] = g.hxi * s2 + alpha_tilde * v_samples[m] * out.rho[m];
  }
  return out;
}

GlobalMoments global_moments(const WignerField& w, const std::vector<double>& v_samples,
                             double alpha_tilde) {
  const LocalMoments lm = local_moments(w, v_samples, alpha_tilde);
  GlobalMoments g;
  for (double v : lm.rho) g.n += v;
  for (double v : lm.j) g.j += v;
  for (double v : lm.e) g.e += v;
  const double hx = w.grid->hx;
  g.n *= hx;
  g.j *= hx;
  g.e *= hx;
  return g;
}

double steady_state_residual(const WignerField& w_prev, const WignerField& w_next, double dt) {
  if (!w_prev.grid || !w_next.grid || !same_grid(*w_prev.grid, *w_next.grid))
    throw config_error("steady_state_residual: fields live on different grids");
  if (!(dt > 0.0)) throw config_error("steady_state_residual: dt must be positive");
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < w_next.values.size(); ++i) {
    diff = std::max(diff, std::fabs(w_next.values[i] - w_prev.values[i]));
    scale = std::max(scale, std::fabs(w_next.values[i]));
  }
  if (scale == 0.0) throw config_error("steady_state_residual: zero field");
  return diff / (dt * scale);
}

void ObservableSeries::append(ObservableRecord rec) {
  if (!records.empty() && !(rec.t > records.back().t))
    throw config_error("ObservableSeries: timestamps must be strictly increasing");
  if (records.empty()) {
    n0 = rec.n;
    j0 = rec.j;
    e0 = rec.e;
  }
  records.push_back(std::move(rec));
}

} // namespace wpfp
