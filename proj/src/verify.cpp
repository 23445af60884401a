#include "joinlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "joinlab/agreement.hpp"
#include "joinlab/joinability.hpp"
#include "joinlab/maps.hpp"
#include "joinlab/oracle.hpp"

namespace joinlab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct SuiteBuilder {
  SuiteReport report;
  void add(const std::string& name, bool ok, const std::string& detail = "") {
    report.checks.push_back({name, ok, ok ? "" : detail});
  }
};

double max_abs(const cmat& m) { return m.cwiseAbs().maxCoeff(); }

// uniform in [lo, hi]
double uni(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

LinearMapRep random_hermiticity_preserving_map(int d, std::mt19937_64& g) {
  // difference of two PSD-Choi maps is Hermiticity-preserving
  std::uniform_int_distribution<std::uint64_t> u64;
  DenseOperator a = random_density(QuditSpace{d, d}, u64(g));
  DenseOperator b = random_density(QuditSpace{d, d}, u64(g));
  DenseOperator j(QuditSpace{d, d}, a.matrix() - 0.4 * b.matrix());
  return inverse_homocorrelation(partial_transpose(j, {0}));
}

}  // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

OperatorReport check_brauer_params(const BrauerParams& p) {
  OperatorReport r;
  const Verdict st = is_state_positive(p);
  const Verdict ch = is_channel_positive(p);
  const Verdict lp = is_local_positive(p);
  r.state_positive = st.positive;
  r.state_margin = st.margin;
  r.channel_positive = ch.positive;
  r.channel_margin = ch.margin;
  r.local_positive = lp.positive;
  r.local_margin = lp.margin;
  // the pivot partial transpose exchanges eta and beta, so PPT coincides
  // with the channel-positivity slack for this family
  r.ppt = ch.positive;
  r.ppt_margin = ch.margin;
  r.entangled = !r.ppt;
  return r;
}

OperatorReport check_dense_bipartite(const DenseOperator& m,
                                     std::uint64_t seed) {
  if (m.space().subsystems() != 2)
    throw std::invalid_argument("check_dense_bipartite: bipartite operator required");
  OperatorReport r;
  const double tol = 1e-10;
  r.state_margin = min_eigenvalue(m);
  r.state_positive = r.state_margin >= -tol;
  DenseOperator pt = partial_transpose(m, {0});
  r.ppt_margin = min_eigenvalue(pt);
  r.ppt = r.ppt_margin >= -tol;
  r.entangled = !r.ppt;
  r.channel_margin = r.ppt_margin;  // channel-positive iff PT is PSD
  r.channel_positive = r.ppt;
  BlockPositiveResult bp = oracle_block_positive(m, 1e-9, seed);
  r.local_margin = bp.best_value;
  r.local_positive = bp.positive;
  return r;
}

SuiteReport verify_maps(std::uint64_t seed, int samples) {
  SuiteBuilder B;
  B.report.suite = "maps";
  std::mt19937_64 gen(seed);
  const int n = std::max(10, samples);

  // PPT <=> channel across Werner, Brauer, and Haar-random two-qubit states
  {
    long checked = 0, failures = 0;
    for (int k = 0; k < n / 3; ++k) {
      const double eta = uni(gen, -1.0, 1.0 / 3.0);
      if (!is_state_positive({2, eta, 0.0}).positive) continue;
      DenseOperator rho = werner_operator({2, eta});
      const bool ppt = min_eigenvalue(partial_transpose(rho, {0})) >= -1e-10;
      const bool cptp = is_cptp(inverse_homocorrelation(rho));
      ++checked;
      if (ppt != cptp) ++failures;
    }
    for (int k = 0; k < n / 3; ++k) {
      const BrauerParams p{2, uni(gen, -1.0, 0.5), uni(gen, -1.0, 1.0)};
      if (!is_state_positive(p).positive) continue;
      DenseOperator rho = brauer_operator(p);
      const bool ppt = min_eigenvalue(partial_transpose(rho, {0})) >= -1e-10;
      const bool cptp = is_cptp(inverse_homocorrelation(rho));
      ++checked;
      if (ppt != cptp) ++failures;
    }
    std::uniform_int_distribution<std::uint64_t> u64;
    for (int k = 0; k < n / 3; ++k) {
      DenseOperator rho = random_density(QuditSpace{2, 2}, u64(gen));
      const bool ppt = min_eigenvalue(partial_transpose(rho, {0})) >= -1e-10;
      const bool cptp = is_cptp(inverse_homocorrelation(rho));
      ++checked;
      if (ppt != cptp) ++failures;
    }
    B.add("ppt_iff_channel", failures == 0,
          fmt(failures) + " of " + fmt(checked) + " samples disagree");
  }

  // NPT operators must be flagged entangled by the report plumbing
  {
    bool ok = true;
    std::uniform_int_distribution<std::uint64_t> u64;
    for (int k = 0; k < n / 5; ++k) {
      DenseOperator rho = random_density(QuditSpace{2, 2}, u64(gen));
      OperatorReport rep = check_dense_bipartite(rho, u64(gen));
      if (rep.ppt == rep.entangled) ok = false;
    }
    OperatorReport bell = check_brauer_params({2, 0.0, 1.0});
    if (!bell.entangled || bell.ppt) ok = false;
    B.add("npt_flags_entangled", ok, "entangled flag inconsistent with ppt");
  }

  // linearity of both dualization maps
  {
    double worst = 0.0;
    for (int k = 0; k < std::max(5, n / 100); ++k) {
      LinearMapRep m1 = random_hermiticity_preserving_map(3, gen);
      LinearMapRep m2 = random_hermiticity_preserving_map(3, gen);
      const double al = uni(gen, -2, 2), be = uni(gen, -2, 2);
      LinearMapRep comb = cplx(al) * m1 + cplx(be) * m2;
      worst = std::max(worst,
                       max_abs(homocorrelation(comb).matrix() -
                               al * homocorrelation(m1).matrix() -
                               be * homocorrelation(m2).matrix()));
      worst = std::max(worst, max_abs(choi(comb).matrix() -
                                      al * choi(m1).matrix() -
                                      be * choi(m2).matrix()));
    }
    B.add("duality_maps_linear", worst <= 1e-12, "max defect " + fmt(worst));
  }

  // correlation identity tr[H(M)(a x b)] = tr[M(a) b]/d_A
  {
    double worst = 0.0;
    for (int k = 0; k < n / 5; ++k) {
      const int d = (k % 2) ? 2 : 3;
      LinearMapRep m = random_hermiticity_preserving_map(d, gen);
      cmat a = random_hermitian(d, gen);
      cmat b = random_hermitian(d, gen);
      const double lhs = correlation_expectation(homocorrelation(m), a, b);
      const double rhs = (m.apply(a) * b).trace().real() / d;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    B.add("correlation_identity", worst <= 1e-12, "max defect " + fmt(worst));
  }

  // round trip through the inverse map
  {
    double worst = 0.0;
    std::uniform_int_distribution<std::uint64_t> u64;
    for (int k = 0; k < n / 10; ++k) {
      DenseOperator m = random_density(QuditSpace{2, 3}, u64(gen));
      DenseOperator back = homocorrelation(inverse_homocorrelation(m));
      worst = std::max(worst, max_abs(back.matrix() - m.matrix()));
    }
    B.add("inverse_homocorrelation_roundtrip", worst <= 1e-12,
          "max defect " + fmt(worst));
  }

  // choi equals the pivot partial transpose of the channel operator
  {
    double worst = 0.0;
    for (int k = 0; k < n / 10; ++k) {
      LinearMapRep m = random_hermiticity_preserving_map(2 + (k % 2), gen);
      worst = std::max(
          worst,
          max_abs(choi(m).matrix() -
                  partial_transpose(homocorrelation(m), {0}).matrix()));
    }
    B.add("choi_is_partial_transpose", worst <= 1e-12,
          "max defect " + fmt(worst));
  }

  return B.report;
}

SuiteReport verify_positivity(std::uint64_t seed, int samples) {
  SuiteBuilder B;
  B.report.suite = "positivity";
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::uint64_t> u64;
  const int n = std::max(10, samples);

  // partial_trace of kron recovers factors scaled by partner traces
  {
    double worst = 0.0;
    for (int k = 0; k < n / 20; ++k) {
      const int da = 2 + int(u64(gen) % 3), db = 2 + int(u64(gen) % 3);
      DenseOperator a(QuditSpace{da}, random_hermitian(da, gen));
      DenseOperator b(QuditSpace{db}, random_hermitian(db, gen));
      DenseOperator prod = kron(a, b);
      worst = std::max(worst, max_abs(partial_trace(prod, {0}).matrix() -
                                      b.trace() * a.matrix()));
      worst = std::max(worst, max_abs(partial_trace(prod, {1}).matrix() -
                                      a.trace() * b.matrix()));
    }
    B.add("partial_trace_of_kron", worst <= 1e-12, "max defect " + fmt(worst));
  }

  // partial transpose: involution, trace- and Hermiticity-preserving
  {
    bool ok = true;
    for (int k = 0; k < n / 20; ++k) {
      DenseOperator m = random_density(QuditSpace{2, 3}, u64(gen));
      DenseOperator pt = partial_transpose(m, {0});
      if (max_abs(partial_transpose(pt, {0}).matrix() - m.matrix()) > 0.0)
        ok = false;
      if (std::abs(pt.trace() - m.trace()) > 1e-14) ok = false;
      if (!pt.is_hermitian()) ok = false;
    }
    B.add("partial_transpose_involution", ok, "involution defect");
  }

  // cone half-angle between the swap line and the symmetric projector line
  {
    bool ok = true;
    std::string detail;
    for (int d = 2; d <= 6; ++d) {
      DenseOperator V = swap_operator(d);
      cmat IV = cmat::Identity(d * d, d * d) + V.matrix();
      const double num = (V.matrix() * IV).trace().real();
      const double den = std::sqrt((V.matrix() * V.matrix()).trace().real() *
                                   (IV * IV).trace().real());
      const double expect = std::sqrt((d + 1.0) / (2.0 * d));
      if (std::abs(num / den - expect) > 1e-12) {
        ok = false;
        detail = "d=" + fmt(d);
      }
    }
    B.add("cone_angle_formula", ok, detail);
  }

  // permutation representation composes as a homomorphism
  {
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
      const int d = 2 + int(u64(gen) % 2);
      const QuditSpace sp = QuditSpace::homogeneous(3, d);
      std::vector<int> p1{0, 1, 2}, p2{0, 1, 2};
      std::shuffle(p1.begin(), p1.end(), gen);
      std::shuffle(p2.begin(), p2.end(), gen);
      std::vector<int> comp(3);
      for (int i = 0; i < 3; ++i) comp[size_t(i)] = p1[size_t(p2[size_t(i)])];
      const cmat lhs = permutation_operator(sp, p1).matrix() *
                       permutation_operator(sp, p2).matrix();
      if (max_abs(lhs - permutation_operator(sp, comp).matrix()) > 1e-12)
        ok = false;
    }
    B.add("permutation_homomorphism", ok, "V_pi V_sigma != V_{pi sigma}");
  }

  // closed-form spectrum against dense diagonalization
  {
    double worst = 0.0;
    for (int k = 0; k < std::min(n, 100); ++k) {
      const int d = 2 + int(u64(gen) % 3);
      const BrauerParams p{d, uni(gen, -2, 2), uni(gen, -2, 2)};
      auto lines = brauer_spectrum(p);
      std::vector<double> expect;
      for (const auto& l : lines)
        expect.insert(expect.end(), size_t(l.multiplicity), l.value);
      std::sort(expect.begin(), expect.end());
      const auto dense = hermitian_eigenvalues(brauer_operator(p));
      for (size_t i = 0; i < expect.size(); ++i)
        worst = std::max(worst, std::abs(expect[i] - dense[i]));
    }
    B.add("brauer_spectrum_matches_dense", worst <= 1e-10,
          "max defect " + fmt(worst));
  }

  // closed-form positivity predicates against eigenvalue/oracle verdicts
  {
    long mism_state = 0, mism_chan = 0, mism_local = 0;
    for (int d = 2; d <= 3; ++d) {
      for (int i = 0; i < 41; ++i)
        for (int j = 0; j < 41; ++j) {
          const BrauerParams p{d, -1.5 + 3.0 * i / 40.0, -1.5 + 3.0 * j / 40.0};
          DenseOperator rho = brauer_operator(p);
          const Verdict st = is_state_positive(p);
          const bool st_dense = min_eigenvalue(rho) >= -1e-10;
          if (st.positive != st_dense && std::abs(st.margin) > 1e-9)
            ++mism_state;
          const Verdict ch = is_channel_positive(p);
          const bool ch_dual = is_cptp(inverse_homocorrelation(rho));
          if (ch.positive != ch_dual && std::abs(ch.margin) > 1e-9) ++mism_chan;
          const Verdict lp = is_local_positive(p);
          const bool lp_oracle =
              oracle_block_positive(rho, 1e-9, seed + size_t(i * 41 + j), 8, 60)
                  .positive;
          if (lp.positive != lp_oracle && std::abs(lp.margin) > 1e-6)
            ++mism_local;
        }
    }
    B.add("state_predicate_vs_eigenvalues", mism_state == 0,
          fmt(mism_state) + " grid mismatches");
    B.add("channel_predicate_vs_duality", mism_chan == 0,
          fmt(mism_chan) + " grid mismatches");
    B.add("local_predicate_vs_product_search", mism_local == 0,
          fmt(mism_local) + " grid mismatches");
  }

  // decomposability: local polygon == hull(state polygon, channel polygon)
  {
    bool ok = true;
    std::string detail;
    for (int d = 2; d <= 5; ++d) {
      const auto sv = state_polygon_vertices(d);
      const auto cv = channel_polygon_vertices(d);
      const auto lv = local_polygon_vertices(d);
      // hull membership via the local inequalities (the local set is convex
      // and contains both polygons)
      auto inside_local = [&](double eta, double beta) {
        return is_local_positive({d, eta, beta}).margin >= -1e-12;
      };
      for (const auto& v : sv)
        if (!inside_local(v[0], v[1])) { ok = false; detail = "state vertex escapes, d=" + fmt(d); }
      for (const auto& v : cv)
        if (!inside_local(v[0], v[1])) { ok = false; detail = "channel vertex escapes, d=" + fmt(d); }
      // each local vertex is a convex combination of state/channel vertices:
      // the four local vertices are themselves vertices of those polygons
      auto near_any = [&](const std::array<double, 2>& v) {
        for (const auto& w : sv)
          if (std::hypot(v[0] - w[0], v[1] - w[1]) < 1e-12) return true;
        for (const auto& w : cv)
          if (std::hypot(v[0] - w[0], v[1] - w[1]) < 1e-12) return true;
        return false;
      };
      for (const auto& v : lv)
        if (!near_any(v)) { ok = false; detail = "local vertex not in hull, d=" + fmt(d); }
      // dense sampling: every hull point satisfies the local predicate and
      // every boundary sample of the local polygon lies in the hull
      for (int k = 0; k < 200; ++k) {
        // random convex combination of state/channel vertices
        std::array<double, 6> wts{};
        double tot = 0.0;
        for (auto& w : wts) { w = uni(gen, 0, 1); tot += w; }
        double eta = 0.0, beta = 0.0;
        for (int q = 0; q < 3; ++q) {
          eta += wts[size_t(q)] / tot * sv[size_t(q)][0] +
                 wts[size_t(q + 3)] / tot * cv[size_t(q)][0];
          beta += wts[size_t(q)] / tot * sv[size_t(q)][1] +
                  wts[size_t(q + 3)] / tot * cv[size_t(q)][1];
        }
        if (!inside_local(eta, beta)) { ok = false; detail = "hull point escapes, d=" + fmt(d); }
      }
    }
    B.add("local_cone_decomposable", ok, detail);
  }

  // three-party invariant family: trace, collective invariance, marginals
  {
    bool ok = true;
    std::string detail;
    for (int k = 0; k < 10; ++k) {
      TripartiteWernerParams t{uni(gen, -1, 1), uni(gen, -1, 1), uni(gen, -1, 1),
                               uni(gen, -1, 1)};
      DenseOperator w = tripartite_werner_operator(t);
      if (std::abs(w.trace() - cplx(1.0)) > 1e-12) { ok = false; detail = "trace"; }
      // collective unitary invariance
      cmat u = random_unitary(2, gen);
      DenseOperator U =
          kron(kron(DenseOperator(QuditSpace{2}, u), DenseOperator(QuditSpace{2}, u)),
               DenseOperator(QuditSpace{2}, u));
      if (max_abs(U.matrix() * w.matrix() - w.matrix() * U.matrix()) > 1e-10) {
        ok = false;
        detail = "collective invariance";
      }
      // marginals are Werner and f-independent
      TripartiteWernerParams t0 = t;
      t0.f = 0.0;
      for (int drop = 0; drop < 3; ++drop) {
        std::vector<int> keep;
        for (int q = 0; q < 3; ++q)
          if (q != drop) keep.push_back(q);
        const double eta = drop == 2 ? t.eta_ab : (drop == 1 ? t.eta_ac : t.eta_bc);
        DenseOperator red = partial_trace(w, keep);
        DenseOperator red0 = partial_trace(tripartite_werner_operator(t0), keep);
        if (max_abs(red.matrix() - werner_operator({2, eta}).matrix()) > 1e-12 ||
            max_abs(red.matrix() - red0.matrix()) > 1e-12) {
          ok = false;
          detail = "marginals";
        }
      }
    }
    B.add("tripartite_family_contract", ok, detail);
  }

  // permutation covariance of the family, f picks up the permutation sign
  {
    bool ok = true;
    const QuditSpace sp = QuditSpace::homogeneous(3, 2);
    for (int k = 0; k < 8; ++k) {
      TripartiteWernerParams t{uni(gen, -1, 1), uni(gen, -1, 1), uni(gen, -1, 1),
                               uni(gen, -1, 1)};
      // odd permutation (swap A and B): etas permute, f flips sign
      DenseOperator Vab = permutation_operator(sp, {1, 0, 2});
      TripartiteWernerParams ts{t.eta_ab, t.eta_bc, t.eta_ac, -t.f};
      cmat lhs = Vab.matrix() * tripartite_werner_operator(t).matrix() *
                 Vab.matrix().adjoint();
      if (max_abs(lhs - tripartite_werner_operator(ts).matrix()) > 1e-12)
        ok = false;
      // even permutation (cycle A->B->C): f unchanged; conjugation sends
      // the pair (XY) to (pi(X) pi(Y)), so the coefficients pull back
      DenseOperator Vc = permutation_operator(sp, {1, 2, 0});
      TripartiteWernerParams tc{t.eta_ac, t.eta_bc, t.eta_ab, t.f};
      cmat lhs2 = Vc.matrix() * tripartite_werner_operator(t).matrix() *
                  Vc.matrix().adjoint();
      if (max_abs(lhs2 - tripartite_werner_operator(tc).matrix()) > 1e-12)
        ok = false;
    }
    B.add("tripartite_permutation_covariance", ok, "covariance defect");
  }

  // span dimension of the permutation operators (Gram rank)
  {
    bool ok = true;
    for (int d = 2; d <= 3; ++d) {
      const QuditSpace sp = QuditSpace::homogeneous(3, d);
      std::vector<cmat> ops = {
          DenseOperator::identity(sp).matrix(),
          permutation_operator(sp, {1, 0, 2}).matrix(),
          permutation_operator(sp, {2, 1, 0}).matrix(),
          permutation_operator(sp, {0, 2, 1}).matrix(),
          permutation_operator(sp, {1, 2, 0}).matrix(),
          permutation_operator(sp, {2, 0, 1}).matrix()};
      rmat gram(6, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          gram(i, j) = (ops[size_t(i)].adjoint() * ops[size_t(j)]).trace().real();
      Eigen::SelfAdjointEigenSolver<rmat> es(gram, Eigen::EigenvaluesOnly);
      int rank = 0;
      for (int i = 0; i < 6; ++i)
        if (es.eigenvalues()(i) > 1e-8) ++rank;
      const int expect = d == 2 ? 5 : 6;
      if (rank != expect) ok = false;
    }
    B.add("permutation_span_rank", ok, "unexpected Gram rank");
  }

  return B.report;
}

SuiteReport verify_joinability(std::uint64_t seed, int samples) {
  SuiteBuilder B;
  B.report.suite = "joinability";
  std::mt19937_64 gen(seed);
  const int n = std::max(10, samples);

  // containment chain on the default grid
  {
    SweepConfig cfg;
    cfg.d = 2;
    cfg.grid_count = 21;
    cfg.scenarios = all_scenarios(2);
    long bad = 0;
    for (const auto& row : region_sweep(cfg)) {
      const auto& v = row.verdict;
      auto strict = [](const std::optional<Verdict>& x) {
        return x && x->margin > 1e-9;
      };
      auto strictly_out = [](const std::optional<Verdict>& x) {
        return x && x->margin < -1e-9;
      };
      if (strict(v.separable) && strictly_out(v.state)) ++bad;
      if (strict(v.state) && strictly_out(v.local)) ++bad;
      for (const auto* c : {&v.channel_a, &v.channel_b, &v.channel_c})
        if (strict(*c) && strictly_out(v.local)) ++bad;
      if (strict(v.local) && strictly_out(v.classical)) ++bad;
    }
    B.add("containment_chain", bad == 0, fmt(bad) + " grid violations");
  }

  // permutation covariance of predicates
  {
    bool ok = true;
    for (int k = 0; k < n / 10; ++k) {
      const EtaTriple t{uni(gen, -1, 1), uni(gen, -1, 1), uni(gen, -1, 1)};
      const EtaTriple swapped_ab{t.ab, t.bc, t.ac};  // exchange parties A,B
      for (int d : {2, 3}) {
        if (std::abs(state_joinable(d, t).margin -
                     state_joinable(d, swapped_ab).margin) > 1e-12)
          ok = false;
      }
      if (std::abs(local_positive_joinable(t).margin -
                   local_positive_joinable(swapped_ab).margin) > 1e-12)
        ok = false;
      // pivot follows the permutation: swapping A,B sends pivot A to B
      if (std::abs(channel_joinable(2, t, Pivot::A).margin -
                   channel_joinable(2, swapped_ab, Pivot::B).margin) > 1e-12)
        ok = false;
    }
    B.add("permutation_covariance", ok, "margin changes under relabeling");
  }

  // union of the four cones has the even-sign-flip symmetry
  {
    bool ok = true;
    for (int k = 0; k < n / 10; ++k) {
      const EtaTriple t{uni(gen, -1, 1), uni(gen, -1, 1), uni(gen, -1, 1)};
      auto in_union = [&](const EtaTriple& x) {
        return state_joinable(2, x).positive ||
               channel_joinable(2, x, Pivot::A).positive ||
               channel_joinable(2, x, Pivot::B).positive ||
               channel_joinable(2, x, Pivot::C).positive;
      };
      const bool u0 = in_union(t);
      const EtaTriple flips[] = {{-t.ab, -t.ac, t.bc},
                                 {-t.ab, t.ac, -t.bc},
                                 {t.ab, -t.ac, -t.bc}};
      for (const auto& ft : flips)
        if (in_union(ft) != u0) ok = false;
    }
    B.add("four_cone_union_symmetry", ok, "tetrahedral symmetry broken");
  }

  // margins flip sign at the tabulated diagonal thresholds
  {
    struct Flip {
      Scenario sc;
      double at;
    };
    const Flip flips[] = {{Scenario::State, 1.0 / 3.0},
                          {Scenario::State, -1.0 / 3.0},
                          {Scenario::ChannelA, -0.2},
                          {Scenario::ChannelA, 1.0 / 3.0},
                          {Scenario::LocalPositive, 2.0 / 3.0},
                          {Scenario::LocalPositive, -1.0 / 3.0},
                          {Scenario::Separable, -1.0 / 6.0},
                          {Scenario::Classical, -1.0 / 3.0}};
    bool ok = true;
    std::string detail;
    for (const auto& f : flips) {
      auto margin_at = [&](double eta) {
        const EtaTriple t{eta, eta, eta};
        switch (f.sc) {
          case Scenario::State: return state_joinable(2, t).margin;
          case Scenario::ChannelA: return channel_joinable(2, t, Pivot::A).margin;
          case Scenario::LocalPositive: return local_positive_joinable(t).margin;
          case Scenario::Separable: return separable_region(t).margin;
          case Scenario::Classical: return classical_joinable_etas(2, t).margin;
          default: return 0.0;
        }
      };
      // bisection on the sign change bracketing the tabulated value
      double lo = f.at - 0.02, hi = f.at + 0.02;
      double flo = margin_at(lo), fhi = margin_at(hi);
      if (flo == fhi || (flo < 0) == (fhi < 0)) {
        ok = false;
        detail = std::string(scenario_name(f.sc)) + " no bracket at " + fmt(f.at);
        continue;
      }
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = margin_at(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      if (std::abs(0.5 * (lo + hi) - f.at) > 1e-9) {
        ok = false;
        detail = std::string(scenario_name(f.sc)) + " flip at " +
                 fmt(0.5 * (lo + hi)) + " expected " + fmt(f.at);
      }
    }
    B.add("diagonal_thresholds", ok, detail);
  }

  // d=2 channel predicate coincides with the sign-flipped state predicate
  {
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      const EtaTriple t{uni(gen, -1, 1), uni(gen, -1, 1), uni(gen, -1, 1)};
      const Verdict ch = channel_joinable(2, t, Pivot::A);
      const Verdict st = state_joinable(2, {-t.ab, -t.ac, t.bc});
      if (ch.positive != st.positive &&
          std::min(std::abs(ch.margin), std::abs(st.margin)) > 1e-10)
        ok = false;
    }
    B.add("channel_equals_flipped_state_d2", ok, "reduction mismatch");
  }

  // analytic predicates against the brute-force oracles on random triples
  {
    long bad_state = 0, bad_chan = 0, bad_local = 0;
    const int m = std::max(10, n / 8);
    for (int k = 0; k < m; ++k) {
      const EtaTriple t{uni(gen, -0.9, 0.9), uni(gen, -0.9, 0.9),
                        uni(gen, -0.9, 0.9)};
      for (int d : {2, 3}) {
        const Verdict st = state_joinable(d, t);
        const auto orc = oracle_state_joinable(
            d, t, 1e-9, OracleOptions{48, 4.0, true});
        if (st.positive != orc.feasible && std::abs(st.margin) > 1e-6)
          ++bad_state;
        const Verdict ch = channel_joinable(d, t, Pivot::A);
        const auto orch = oracle_channel_joinable(
            d, t, Pivot::A, 1e-9, OracleOptions{48, 4.0, true});
        if (ch.positive != orch.feasible && std::abs(ch.margin) > 1e-6)
          ++bad_chan;
      }
      const Verdict lp = local_positive_joinable(t);
      const auto orl = oracle_local_positive_joinable(t, 1e-9);
      if (lp.positive != orl.feasible && std::abs(lp.margin) > 1e-6)
        ++bad_local;
    }
    B.add("state_predicate_vs_oracle", bad_state == 0,
          fmt(bad_state) + " mismatches");
    B.add("channel_predicate_vs_oracle", bad_chan == 0,
          fmt(bad_chan) + " mismatches");
    B.add("local_predicate_vs_oracle", bad_local == 0,
          fmt(bad_local) + " mismatches");
  }

  // classical reference points
  {
    bool ok = classical_joinable(2, {1.0, 1.0, 1.0}) &&
              !classical_joinable(2, {0.0, 0.0, 0.0}) &&
              classical_joinable(3, {0.0, 0.0, 0.0});
    B.add("classical_reference_points", ok, "reference verdicts wrong");
  }

  // every oracle-feasible point satisfies the four linear bounds, and the
  // cubic surface expression carries the sign of the interior objective
  // minimum whenever it is the binding constraint
  {
    long bad = 0;
    for (int k = 0; k < n / 4; ++k) {
      const EtaTriple t{uni(gen, -1.1, 1.1), uni(gen, -1.1, 1.1),
                        uni(gen, -1.1, 1.1)};
      const auto orc = oracle_local_positive_joinable(t);
      if (orc.feasible) {
        const double lin =
            std::min({1 + t.ab + t.ac + t.bc, 1 + t.ab - t.ac - t.bc,
                      1 - t.ab + t.ac - t.bc, 1 - t.ab - t.ac + t.bc});
        if (lin < -1e-9) ++bad;
      }
      const double prod = t.ab * t.ac * t.bc;
      if (prod > 0) {
        const double ustar = (t.ab * t.ab * t.ac * t.ac -
                              t.bc * t.bc * (t.ab * t.ab + t.ac * t.ac)) /
                             (2 * prod * t.bc);
        const double cubic = local_cubic_expression(t);
        if (ustar >= -1 && ustar <= 1 && std::abs(cubic) > 1e-6) {
          const double interior =
              0.25 * (1.0 - (t.ab * t.ab * t.ac * t.ac +
                             t.ab * t.ab * t.bc * t.bc +
                             t.ac * t.ac * t.bc * t.bc) /
                                (2 * prod));
          if ((cubic >= 0) != (interior >= 0)) ++bad;
        }
      }
    }
    B.add("appendix_bounds_at_feasible_points", bad == 0,
          fmt(bad) + " violations");
  }

  return B.report;
}

SuiteReport verify_agreement(std::uint64_t seed, int samples) {
  SuiteBuilder B;
  B.report.suite = "agreement";
  std::mt19937_64 gen(seed);
  const int n = std::max(10, samples);

  // POVM contract: completeness, positivity, twirl invariance
  {
    bool ok = true;
    std::string detail;
    for (const auto& [d, np] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
      const AgreementPovm povm = agreement_povm(d, np);
      cmat sum = povm.e_agree.matrix() + povm.e_disagree.matrix();
      if (max_abs(sum - cmat::Identity(sum.rows(), sum.cols())) > 1e-12) {
        ok = false;
        detail = "completeness";
      }
      if (min_eigenvalue(povm.e_agree) < -1e-12 ||
          min_eigenvalue(povm.e_disagree) < -1e-12) {
        ok = false;
        detail = "positivity";
      }
      for (int k = 0; k < 20; ++k) {
        cmat u = random_unitary(d, gen);
        DenseOperator U(QuditSpace{d}, u);
        DenseOperator coll = U;
        for (int q = 1; q < np; ++q) coll = kron(coll, U);
        const cmat twirled = coll.matrix() * povm.e_agree.matrix() *
                             coll.matrix().adjoint();
        if (max_abs(twirled - povm.e_agree.matrix()) > 1e-10) {
          ok = false;
          detail = "twirl invariance";
        }
      }
    }
    B.add("povm_contract", ok, detail);
  }

  // Werner agreement equals the alpha parameterization
  {
    double worst = 0.0;
    const AgreementPovm p2 = agreement_povm(2, 2);
    const AgreementPovm p3 = agreement_povm(3, 2);
    for (int k = 0; k < n / 10; ++k) {
      const double eta2 = uni(gen, -1.0, 1.0 / 3.0);
      worst = std::max(worst, std::abs(agreement_probability(
                                           werner_operator({2, eta2}), p2) -
                                       alpha_of_eta(2, eta2)));
      const double eta3 = uni(gen, -0.5, 0.25);
      worst = std::max(worst, std::abs(agreement_probability(
                                           werner_operator({3, eta3}), p3) -
                                       alpha_of_eta(3, eta3)));
    }
    B.add("werner_agreement_is_alpha", worst <= 1e-12,
          "max defect " + fmt(worst));
  }

  // sampled extrema against the closed-form cone bounds, bounds attained
  {
    bool ok = true;
    std::string detail;
    for (int d : {2, 3}) {
      const auto [slo, shi] = agreement_bounds(d, 2, AgreementCone::State);
      const auto got = oracle_agreement_extrema(d, 2, Cone::State, n, seed);
      if (got.first < slo - 1e-9 || got.second > shi + 1e-9) {
        ok = false;
        detail = "state bound violated, d=" + fmt(d);
      }
      if (std::abs(got.second - shi) > 1e-12 || std::abs(got.first - slo) > 1e-12) {
        ok = false;
        detail = "state extremizer not attained, d=" + fmt(d);
      }
      const auto [clo, chi] = agreement_bounds(d, 2, AgreementCone::Channel);
      const auto gotc = oracle_agreement_extrema(d, 2, Cone::Channel, n, seed + 1);
      if (gotc.first < clo - 1e-9 || gotc.second > chi + 1e-9) {
        ok = false;
        detail = "channel bound violated, d=" + fmt(d);
      }
      if (std::abs(gotc.second - chi) > 1e-12 ||
          std::abs(gotc.first - clo) > 1e-12) {
        ok = false;
        detail = "channel extremizer not attained, d=" + fmt(d);
      }
    }
    B.add("bipartite_cone_bounds", ok, detail);
  }

  // multiparty bound attained by the symmetric state
  {
    const auto [lo, hi] = agreement_bounds(2, 3, AgreementCone::State);
    const AgreementPovm povm = agreement_povm(2, 3);
    DenseOperator sym = symmetric_projector(2, 3);
    DenseOperator w(sym.space(), sym.matrix() / sym.trace());
    const double a = agreement_probability(w, povm);
    const auto got = oracle_agreement_extrema(2, 3, Cone::State, n / 2, seed + 2);
    const bool ok = std::abs(a - hi) <= 1e-12 && std::abs(hi - 0.5) <= 1e-15 &&
                    got.first >= lo - 1e-9 && got.second <= hi + 1e-9;
    B.add("multiparty_bound_attained", ok, "value " + fmt(a));
  }

  // executable derivation chain for the cloning and sharability constants
  {
    bool ok = true;
    for (int d = 2; d <= 6; ++d) {
      const double direct = (d + 3.0) / (2.0 * (d + 1.0));
      if (std::abs(cloning_alpha_from_classical_chain(d) - direct) > 1e-15)
        ok = false;
      if (std::abs(derived_task_bounds(d).cloning_alpha_max - direct) > 1e-15)
        ok = false;
    }
    if (std::abs(sharability_alpha_from_classical_chain() - 1.0 / 6.0) > 1e-15)
      ok = false;
    const auto b2 = derived_task_bounds(2);
    if (!b2.sharability_alpha_bound_qubit ||
        std::abs(*b2.sharability_alpha_bound_qubit - 1.0 / 6.0) > 1e-15)
      ok = false;
    // the sharability agreement maps back to the known eta threshold
    if (std::abs(eta_of_alpha(2, 1.0 / 6.0) + 2.0 / 3.0) > 1e-15) ok = false;
    B.add("derived_task_bounds_chain", ok, "constant mismatch");
  }

  return B.report;
}

std::vector<SuiteReport> verify_suites(const std::string& which,
                                       std::uint64_t seed, int samples) {
  std::vector<SuiteReport> out;
  if (which == "maps" || which == "all") out.push_back(verify_maps(seed, samples));
  if (which == "positivity" || which == "all")
    out.push_back(verify_positivity(seed, samples));
  if (which == "joinability" || which == "all")
    out.push_back(verify_joinability(seed, samples));
  if (which == "agreement" || which == "all")
    out.push_back(verify_agreement(seed, samples));
  if (out.empty())
    throw std::invalid_argument("unknown suite: " + which);
  return out;
}

}  // namespace joinlab
