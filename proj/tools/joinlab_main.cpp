// joinlab command line front end.
//
//   joinlab check   --kind werner|brauer|dense-file ...   JSON verdict record
//   joinlab sweep   --d 2 --grid 41 [--oracle] --out f    CSV/JSON region data
//   joinlab verify  --suite all --seed 7 --samples 500    property suites
//
// Exit codes: 0 ok, 1 property failure, 2 usage, 3 I/O.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "joinlab/agreement.hpp"
#include "joinlab/joinability.hpp"
#include "joinlab/maps.hpp"
#include "joinlab/oracle.hpp"
#include "joinlab/verify.hpp"
#include "joinlab/version.hpp"

using json = nlohmann::ordered_json;
using namespace joinlab;

namespace {

int env_threads() {
  const char* v = std::getenv("JOINLAB_THREADS");
  if (!v) return 0;
  try {
    return std::max(1, std::stoi(v));
  } catch (...) {
    return 0;
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

DenseOperator load_dense_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  const auto dims = j.at("dims").get<std::vector<int>>();
  if (dims.size() != 2)
    throw std::runtime_error("dense-file: dims must have two entries");
  const long n = long(dims[0]) * dims[1];
  cmat m = cmat::Zero(n, n);
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) {
      double im = has_im ? j["im"][size_t(r)][size_t(c)].get<double>() : 0.0;
      m(r, c) = cplx(re[size_t(r)][size_t(c)].get<double>(), im);
    }
  return {QuditSpace{dims[0], dims[1]}, std::move(m)};
}

json report_to_json(const OperatorReport& r) {
  json out;
  out["state_positive"] = r.state_positive;
  out["channel_positive"] = r.channel_positive;
  out["local_positive"] = r.local_positive;
  out["ppt"] = r.ppt;
  out["entangled"] = r.entangled;
  out["margins"] = {{"state", r.state_margin},
                    {"channel", r.channel_margin},
                    {"local", r.local_margin},
                    {"ppt", r.ppt_margin}};
  return out;
}

std::set<Scenario> parse_scenarios(const std::string& csv, int d,
                                   const std::string& pivot) {
  std::set<Scenario> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      auto a = all_scenarios(d);
      out.insert(a.begin(), a.end());
    } else if (item == "state") {
      out.insert(Scenario::State);
    } else if (item == "channel") {
      if (pivot == "A") out.insert(Scenario::ChannelA);
      else if (pivot == "B") out.insert(Scenario::ChannelB);
      else if (pivot == "C") out.insert(Scenario::ChannelC);
      else {
        out.insert(Scenario::ChannelA);
        out.insert(Scenario::ChannelB);
        out.insert(Scenario::ChannelC);
      }
    } else if (item == "channel_A") {
      out.insert(Scenario::ChannelA);
    } else if (item == "channel_B") {
      out.insert(Scenario::ChannelB);
    } else if (item == "channel_C") {
      out.insert(Scenario::ChannelC);
    } else if (item == "local") {
      out.insert(Scenario::LocalPositive);
    } else if (item == "separable") {
      out.insert(Scenario::Separable);
    } else if (item == "classical") {
      out.insert(Scenario::Classical);
    } else {
      throw CLI::ValidationError("--scenarios", "unknown scenario: " + item);
    }
  }
  if (out.empty()) throw CLI::ValidationError("--scenarios", "empty set");
  return out;
}

const Scenario kScenarioOrder[] = {
    Scenario::State,     Scenario::ChannelA,  Scenario::ChannelB,
    Scenario::ChannelC,  Scenario::LocalPositive, Scenario::Separable,
    Scenario::Classical};

int run_sweep_cmd(const SweepConfig& cfg, bool diagonal,
                  const std::string& out_path, const std::string& format) {
  SweepSummary summary;
  const auto rows = diagonal ? diagonal_sweep(cfg, &summary)
                             : region_sweep(cfg, &summary);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open output path " << out_path << "\n";
    return 3;
  }

  std::vector<Scenario> cols;
  for (Scenario s : kScenarioOrder)
    if (cfg.scenarios.count(s)) cols.push_back(s);

  auto oracle_of = [&](const SweepRow& r, Scenario s) -> std::optional<bool> {
    switch (s) {
      case Scenario::State: return r.oracle_state;
      case Scenario::ChannelA: return r.oracle_channel_a;
      case Scenario::ChannelB: return r.oracle_channel_b;
      case Scenario::ChannelC: return r.oracle_channel_c;
      case Scenario::LocalPositive: return r.oracle_local;
      default: return std::nullopt;
    }
  };

  if (format == "csv") {
    out << "# version: joinlab " << kVersion << "\n";
    out << "# d: " << cfg.d << "\n";
    out << "# channel_join_form: " << channel_join_form_description() << "\n";
    out << "eta_ab,eta_ac,eta_bc";
    for (Scenario s : cols)
      out << ',' << scenario_name(s) << ',' << scenario_name(s) << "_margin";
    if (cfg.with_oracle)
      for (Scenario s : cols)
        if (s != Scenario::Separable && s != Scenario::Classical)
          out << ",oracle_" << scenario_name(s);
    out << "\n";
    for (const auto& r : rows) {
      out << fmt_double(r.t.ab) << ',' << fmt_double(r.t.ac) << ','
          << fmt_double(r.t.bc);
      for (Scenario s : cols) {
        const auto& v = r.verdict.by_scenario(s);
        out << ',' << (v->positive ? 1 : 0) << ',' << fmt_double(v->margin);
      }
      if (cfg.with_oracle)
        for (Scenario s : cols) {
          if (s == Scenario::Separable || s == Scenario::Classical) continue;
          const auto o = oracle_of(r, s);
          out << ',' << (o && *o ? 1 : 0);
        }
      out << "\n";
    }
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      json row;
      row["eta_ab"] = r.t.ab;
      row["eta_ac"] = r.t.ac;
      row["eta_bc"] = r.t.bc;
      for (Scenario s : cols) {
        const auto& v = r.verdict.by_scenario(s);
        row[scenario_name(s)] = v->positive ? 1 : 0;
        row[std::string(scenario_name(s)) + "_margin"] = v->margin;
      }
      if (cfg.with_oracle)
        for (Scenario s : cols) {
          if (s == Scenario::Separable || s == Scenario::Classical) continue;
          const auto o = oracle_of(r, s);
          if (o) row[std::string("oracle_") + scenario_name(s)] = *o ? 1 : 0;
        }
      arr.push_back(std::move(row));
    }
    out << arr.dump(0) << "\n";
  }
  out.flush();
  if (!out) {
    std::cerr << "error: short write to " << out_path << "\n";
    return 3;
  }

  json meta;
  meta["version"] = kVersion;
  meta["points"] = summary.points;
  meta["channel_join_form"] = channel_join_form_description();
  if (cfg.with_oracle) {
    meta["oracle_disagreements"] = summary.oracle_disagreements;
    meta["oracle_within_margin_band"] = summary.oracle_within_band;
    meta["margin_band"] = summary.band;
  }
  std::cerr << meta.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joinability regions, positivity cones, and agreement bounds"};
  app.require_subcommand(1);

  // ---- check ----
  auto* check = app.add_subcommand("check", "positivity verdicts for one operator");
  std::string kind = "werner";
  int cd = 2;
  double ceta = 0.0, cbeta = 0.0;
  std::string cfile;
  std::uint64_t cseed = 1;
  check->add_option("--kind", kind)
      ->check(CLI::IsMember({"werner", "brauer", "dense-file"}));
  check->add_option("--d", cd);
  check->add_option("--eta", ceta);
  check->add_option("--beta", cbeta);
  check->add_option("--file", cfile);
  check->add_option("--seed", cseed);

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "grid sweep of the joinability regions");
  int sd = 2, sgrid = 21, sdiag = 0;
  std::string srange = "-1:1";
  std::string sscen = "all";
  std::string spivot;
  bool soracle = false;
  std::uint64_t sseed = 0;
  std::string sout = "sweep.csv";
  std::string sformat = "csv";
  sweep->add_option("--d", sd);
  sweep->add_option("--grid", sgrid);
  sweep->add_option("--diagonal", sdiag, "sweep the symmetric line with N points");
  sweep->add_option("--range", srange, "lo:hi per axis");
  sweep->add_option("--scenarios", sscen);
  sweep->add_option("--pivot", spivot)->check(CLI::IsMember({"A", "B", "C"}));
  sweep->add_flag("--oracle", soracle);
  sweep->add_option("--seed", sseed);
  sweep->add_option("--out", sout);
  sweep->add_option("--format", sformat)->check(CLI::IsMember({"csv", "json"}));

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run property suites");
  std::string vsuite = "all";
  std::uint64_t vseed = 7;
  int vsamples = 500;
  verify->add_option("--suite", vsuite);
  verify->add_option("--seed", vseed);
  verify->add_option("--samples", vsamples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (*check) {
      json out;
      out["kind"] = kind;
      if (kind == "werner") {
        out["d"] = cd;
        out["eta"] = ceta;
        out.update(report_to_json(check_brauer_params({cd, ceta, 0.0})));
      } else if (kind == "brauer") {
        out["d"] = cd;
        out["eta"] = ceta;
        out["beta"] = cbeta;
        out.update(report_to_json(check_brauer_params({cd, ceta, cbeta})));
      } else {
        if (cfile.empty()) {
          std::cerr << "check --kind dense-file requires --file\n";
          return 2;
        }
        DenseOperator m = load_dense_file(cfile);
        out["file"] = cfile;
        out["dims"] = m.space().dims();
        out.update(report_to_json(check_dense_bipartite(m, cseed)));
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*sweep) {
      SweepConfig cfg;
      cfg.d = sd;
      cfg.grid_count = sdiag > 0 ? sdiag : sgrid;
      const auto colon = srange.find(':');
      if (colon == std::string::npos) {
        std::cerr << "--range expects lo:hi\n";
        return 2;
      }
      cfg.lo = std::stod(srange.substr(0, colon));
      cfg.hi = std::stod(srange.substr(colon + 1));
      cfg.scenarios = parse_scenarios(sscen, sd, spivot);
      cfg.with_oracle = soracle;
      cfg.seed = sseed;
      cfg.threads = env_threads();
      return run_sweep_cmd(cfg, sdiag > 0, sout, sformat);
    }

    if (*verify) {
      std::vector<SuiteReport> reports;
      try {
        reports = verify_suites(vsuite, vseed, vsamples);
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
      bool all_ok = true;
      for (const auto& rep : reports) {
        for (const auto& c : rep.checks) {
          std::cout << "[" << rep.suite << "] " << c.name << ": "
                    << (c.passed ? "PASS" : "FAIL");
          if (!c.passed) std::cout << "  (" << c.detail << ")";
          std::cout << "\n";
          all_ok = all_ok && c.passed;
        }
      }
      std::cout << (all_ok ? "all checks passed" : "FAILURES present") << "\n";
      return all_ok ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
