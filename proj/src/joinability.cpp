#include "joinlab/joinability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "joinlab/oracle.hpp"

namespace joinlab {

namespace {

double omega_sum_modulus(const EtaTriple& t) {
  // |eta_ab + w eta_ac + w^2 eta_bc|, w = exp(2 pi i/3)
  const double re = t.ab - 0.5 * (t.ac + t.bc);
  const double im = 0.5 * std::sqrt(3.0) * (t.ac - t.bc);
  return std::hypot(re, im);
}

void require_d(int d, int min_d = 2) {
  if (d < min_d) throw std::invalid_argument("joinability: d >= 2 required");
}

}  // namespace

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::State: return "state_join";
    case Scenario::ChannelA: return "channel_join_A";
    case Scenario::ChannelB: return "channel_join_B";
    case Scenario::ChannelC: return "channel_join_C";
    case Scenario::LocalPositive: return "local_positive_join";
    case Scenario::Separable: return "separable";
    case Scenario::Classical: return "classical";
  }
  return "?";
}

std::set<Scenario> all_scenarios(int d) {
  std::set<Scenario> s{Scenario::State, Scenario::ChannelA, Scenario::ChannelB,
                       Scenario::ChannelC, Scenario::Classical};
  if (d == 2) {
    s.insert(Scenario::LocalPositive);
    s.insert(Scenario::Separable);
  }
  return s;
}

Verdict state_joinable(int d, const EtaTriple& t) {
  require_d(d);
  const double s = t.ab + t.ac + t.bc;
  const double mod = omega_sum_modulus(t);
  double margin;
  if (d == 2) {
    margin = std::min(0.5 * (1.0 - s) - mod, s + 1.0);
  } else {
    const double m1 = (3.0 + (d - 1) * s) / (2.0 * (d - 1)) - mod;
    const double m2 = (3.0 - (d + 1) * s) / (2.0 * (d + 1)) - mod;
    margin = std::min(m1, m2);
  }
  return {margin >= -kBoundarySlack, margin};
}

namespace {

// Channel-positivity blocks of the invariant joining family after the pivot
// partial transpose, scaled by d^3 and written in terms of the cross-pair
// parameters (x, y), the opposite pair z, and the free coefficient E = e*d
// (f = 0; the objective is even in f). See channel_join_form_description().
struct ChannelBlocks {
  double d;
  double x, y, z, s;
  double k;  // d^2 - 4

  double a1(double E) const { return (1 - s) + d * z - (d - 2) * E; }
  double a2(double E) const { return (1 - s) - d * z + (d + 2) * E; }
  double mu(double E) const {
    const double T = 2 * (1 - s) + d * d * (x + y) - k * E;
    const double P = (x + y + 2 * z) + k * E;
    const double K2 = (d * d - 1) * (x - y) * (x - y);
    return 0.5 * (T - d * std::sqrt(P * P + K2));
  }
  double block_min(double E) const {
    double m = std::min(a1(E), mu(E));
    if (d >= 3) m = std::min(m, a2(E));
    return m;
  }
};

double golden_maximize(const std::function<double(double)>& fn, double lo,
                       double hi, int iters) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = fn(c1), f2 = fn(c2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = fn(c2);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = fn(c1);
    }
  }
  return fn(0.5 * (a + b));
}

}  // namespace

Verdict channel_joinable(int d, const EtaTriple& t, Pivot pivot) {
  require_d(d);
  double x, y, z;
  switch (pivot) {
    case Pivot::A: x = t.ab; y = t.ac; z = t.bc; break;
    case Pivot::B: x = t.ab; y = t.bc; z = t.ac; break;
    case Pivot::C: x = t.ac; y = t.bc; z = t.ab; break;
    default: throw std::invalid_argument("channel_joinable: bad pivot");
  }
  ChannelBlocks blk{double(d), x, y, z, x + y + z, double(d) * d - 4.0};
  double margin;
  if (d == 2) {
    margin = blk.block_min(0.0);  // free coefficient is pure gauge
  } else {
    const double box = 4.0 * d;
    margin = golden_maximize([&](double E) { return blk.block_min(E); }, -box,
                             box, 160);
  }
  return {margin >= -kBoundarySlack, margin};
}

std::string channel_join_form_description() {
  return "block form (f=0 slice, margin = d^3 * max_E min of blocks): "
         "A1=(1-s)+d*z-(d-2)E, A2=(1-s)-d*z+(d+2)E (d>=3 only), "
         "mu=[2(1-s)+d^2(x+y)-(d^2-4)E - d*sqrt(((x+y+2z)+(d^2-4)E)^2 "
         "+ (d^2-1)(x-y)^2)]/2, with (x,y) the pivot cross pairs, z the "
         "opposite pair, s=x+y+z; joinable iff max_E min(A1,A2,mu) >= 0";
}

double local_cubic_expression(const EtaTriple& t) {
  const double p = t.ab, q = t.ac, r = t.bc;
  return 2 * p * q * r - p * p * q * q - p * p * r * r - q * q * r * r;
}

double local_min_objective(const EtaTriple& t) {
  const double p = t.ab, q = t.ac, r = t.bc;
  double g = std::min(r - std::abs(p + q), -r - std::abs(p - q));
  if (p * q * r > 0) {
    const double ustar =
        (p * p * q * q - r * r * (p * p + q * q)) / (2 * p * q * r * r);
    if (ustar >= -1.0 && ustar <= 1.0) {
      const double gstar =
          -(p * p * q * q + p * p * r * r + q * q * r * r) / (2 * p * q * r);
      g = std::min(g, gstar);
    }
  }
  return 0.25 * (1.0 + g);
}

Verdict local_positive_joinable(const EtaTriple& t) {
  const double p = t.ab, q = t.ac, r = t.bc;
  double margin = std::min({1 + p + q + r, 1 + p - q - r, 1 - p + q - r,
                            1 - p - q + r});
  if (p * q * r > 0) {
    const double ustar =
        (p * p * q * q - r * r * (p * p + q * q)) / (2 * p * q * r * r);
    if (ustar >= -1.0 && ustar <= 1.0)
      margin = std::min(margin, local_cubic_expression(t));
  }
  return {margin >= -kBoundarySlack, margin};
}

double cayley_expression(const EtaTriple& t) {
  const double p = t.ab, q = t.ac, r = t.bc;
  const double s = p + q + r;
  return 1.0 + 54.0 * p * q * r - 9.0 * s * s +
         18.0 * (p * q + p * r + q * r);
}

Verdict separable_region(const EtaTriple& t) {
  const Verdict st = state_joinable(2, t);
  const double margin = std::min(cayley_expression(t), st.margin);
  return {margin >= -kBoundarySlack, margin};
}

bool classical_joinable(int d, const std::array<double, 3>& alphas) {
  require_d(d);
  for (double a : alphas)
    if (a < -kBoundarySlack || a > 1.0 + kBoundarySlack)
      throw std::invalid_argument("classical_joinable: alpha outside [0,1]");
  const double aab = alphas[0], aac = alphas[1], abc = alphas[2];
  double m = std::min({1.0 + aab - aac - abc, 1.0 - aab + aac - abc,
                       1.0 - aab - aac + abc});
  if (d == 2) m = std::min(m, aab + aac + abc - 1.0);
  return m >= -kBoundarySlack;
}

Verdict classical_joinable_etas(int d, const EtaTriple& t) {
  require_d(d);
  const double aab = alpha_of_eta(d, t.ab);
  const double aac = alpha_of_eta(d, t.ac);
  const double abc = alpha_of_eta(d, t.bc);
  double m = std::min({1.0 + aab - aac - abc, 1.0 - aab + aac - abc,
                       1.0 - aab - aac + abc});
  if (d == 2) m = std::min(m, aab + aac + abc - 1.0);
  for (double a : {aab, aac, abc}) m = std::min({m, a, 1.0 - a});
  return {m >= -kBoundarySlack, m};
}

const std::optional<Verdict>& RegionVerdict::by_scenario(Scenario s) const {
  switch (s) {
    case Scenario::State: return state;
    case Scenario::ChannelA: return channel_a;
    case Scenario::ChannelB: return channel_b;
    case Scenario::ChannelC: return channel_c;
    case Scenario::LocalPositive: return local;
    case Scenario::Separable: return separable;
    case Scenario::Classical: return classical;
  }
  throw std::logic_error("by_scenario: bad scenario");
}

std::optional<Verdict>& RegionVerdict::by_scenario(Scenario s) {
  return const_cast<std::optional<Verdict>&>(
      static_cast<const RegionVerdict*>(this)->by_scenario(s));
}

RegionVerdict evaluate_region_point(int d, const EtaTriple& t,
                                    const std::set<Scenario>& scenarios) {
  RegionVerdict v;
  for (Scenario s : scenarios) {
    switch (s) {
      case Scenario::State: v.state = state_joinable(d, t); break;
      case Scenario::ChannelA: v.channel_a = channel_joinable(d, t, Pivot::A); break;
      case Scenario::ChannelB: v.channel_b = channel_joinable(d, t, Pivot::B); break;
      case Scenario::ChannelC: v.channel_c = channel_joinable(d, t, Pivot::C); break;
      case Scenario::LocalPositive:
        if (d != 2)
          throw std::invalid_argument("local-positive region is d=2 only");
        v.local = local_positive_joinable(t);
        break;
      case Scenario::Separable:
        if (d != 2)
          throw std::invalid_argument("separable region is d=2 only");
        v.separable = separable_region(t);
        break;
      case Scenario::Classical: v.classical = classical_joinable_etas(d, t); break;
    }
  }
  // containment sanity: state => local, channel => local (d=2 sets)
  if (v.local) {
    const double tol = 1e-9;
    auto check = [&](const std::optional<Verdict>& inner) {
      if (inner && inner->margin > tol && v.local->margin < -tol)
        throw std::logic_error("containment violation: inner cone outside local region");
    };
    check(v.state);
    check(v.channel_a);
    check(v.channel_b);
    check(v.channel_c);
  }
  return v;
}

namespace {

std::vector<SweepRow> run_sweep(const SweepConfig& cfg,
                                const std::vector<EtaTriple>& points,
                                SweepSummary* summary) {
  std::vector<SweepRow> rows(points.size());
  const OracleOptions grid_opts{.iterations = 48, .box = 4.0,
                                .even_f_reduction = true};

  auto eval_range = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const EtaTriple& t = points[i];
      SweepRow row;
      row.t = t;
      row.verdict = evaluate_region_point(cfg.d, t, cfg.scenarios);
      if (cfg.with_oracle) {
        if (cfg.scenarios.count(Scenario::State))
          row.oracle_state =
              oracle_state_joinable(cfg.d, t, cfg.oracle_tol, grid_opts)
                  .feasible;
        if (cfg.scenarios.count(Scenario::ChannelA))
          row.oracle_channel_a = oracle_channel_joinable(cfg.d, t, Pivot::A,
                                                         cfg.oracle_tol,
                                                         grid_opts)
                                     .feasible;
        if (cfg.scenarios.count(Scenario::ChannelB))
          row.oracle_channel_b = oracle_channel_joinable(cfg.d, t, Pivot::B,
                                                         cfg.oracle_tol,
                                                         grid_opts)
                                     .feasible;
        if (cfg.scenarios.count(Scenario::ChannelC))
          row.oracle_channel_c = oracle_channel_joinable(cfg.d, t, Pivot::C,
                                                         cfg.oracle_tol,
                                                         grid_opts)
                                     .feasible;
        if (cfg.scenarios.count(Scenario::LocalPositive))
          row.oracle_local =
              oracle_local_positive_joinable(t, cfg.oracle_tol).feasible;
      }
      rows[i] = std::move(row);
    }
  };

  int threads = cfg.threads;
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || rows.size() < 64) {
    eval_range(0, rows.size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (rows.size() + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const size_t b = std::min(rows.size(), w * chunk);
      const size_t e = std::min(rows.size(), (w + 1) * chunk);
      if (b < e) pool.emplace_back(eval_range, b, e);
    }
    for (auto& th : pool) th.join();
  }

  if (summary) {
    summary->points = static_cast<long>(rows.size());
    auto tally = [&](const std::optional<Verdict>& v,
                     const std::optional<bool>& o) {
      if (!v || !o) return;
      if (v->positive != *o) {
        if (std::abs(v->margin) <= summary->band)
          ++summary->oracle_within_band;
        else
          ++summary->oracle_disagreements;
      }
    };
    for (const auto& r : rows) {
      tally(r.verdict.state, r.oracle_state);
      tally(r.verdict.channel_a, r.oracle_channel_a);
      tally(r.verdict.channel_b, r.oracle_channel_b);
      tally(r.verdict.channel_c, r.oracle_channel_c);
      tally(r.verdict.local, r.oracle_local);
    }
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> region_sweep(const SweepConfig& cfg,
                                   SweepSummary* summary) {
  if (cfg.grid_count < 2)
    throw std::invalid_argument("region_sweep: grid_count >= 2 required");
  if (!(cfg.lo < cfg.hi))
    throw std::invalid_argument("region_sweep: need lo < hi");
  const int n = cfg.grid_count;
  auto coord = [&](int k) {
    return cfg.lo + (cfg.hi - cfg.lo) * double(k) / double(n - 1);
  };
  std::vector<EtaTriple> pts;
  pts.reserve(size_t(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        pts.push_back({coord(i), coord(j), coord(k)});
  return run_sweep(cfg, pts, summary);
}

std::vector<SweepRow> diagonal_sweep(const SweepConfig& cfg,
                                     SweepSummary* summary) {
  if (cfg.grid_count < 2)
    throw std::invalid_argument("diagonal_sweep: grid_count >= 2 required");
  const int n = cfg.grid_count;
  std::vector<EtaTriple> pts;
  pts.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    const double v = cfg.lo + (cfg.hi - cfg.lo) * double(i) / double(n - 1);
    pts.push_back({v, v, v});
  }
  return run_sweep(cfg, pts, summary);
}

}  // namespace joinlab
