// Command-line front end: ground states, evolution runs, classification,
// dichotomy sweeps, bound audits, unbounded-direction scans, the exponent
// catalog, Trudinger-Moser ratio estimates, and action landscapes.
//
// Outputs are deterministic for a fixed invocation (including seeds): CSV via
// the shortest-round-trip double formatter, JSON with the same numbers, field
// snapshots in the binary format of the core library.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlkg/dichotomy.hpp"
#include "nlkg/errors.hpp"
#include "nlkg/evolution.hpp"
#include "nlkg/exponents.hpp"
#include "nlkg/functionals.hpp"
#include "nlkg/ground_state.hpp"
#include "nlkg/io.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/snapshot.hpp"

using njson = nlohmann::ordered_json;
using namespace nlkg;

namespace {

// ---- shared plumbing ----

std::string join_path(const std::string& dir, const std::string& p) {
  if (p.empty() || p.front() == '/' || dir.empty() || dir == ".") return p;
  return dir + "/" + p;
}

void write_json_file(const std::string& path, const njson& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

// CSV with leading string columns (the numeric cells reuse format_double)
void write_mixed_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

// model mini-language: power:q | powersum:q1,l1;q2,l2 | critical | exp:p,k0,g
NonlinearityModel parse_model(const std::string& s, int d) {
  auto split = [](const std::string& x, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(x);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
  };
  if (s == "critical") return NonlinearityModel::critical_power(d);
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? std::string() : s.substr(colon + 1);
  if (head == "power") {
    if (tail.empty()) throw ParamOutOfRange("model power:q needs an exponent");
    return NonlinearityModel::single_power(d, std::stod(tail));
  }
  if (head == "powersum") {
    std::vector<PowerTerm> terms;
    for (const auto& term : split(tail, ';')) {
      auto ql = split(term, ',');
      if (ql.empty() || ql.size() > 2)
        throw ParamOutOfRange("model powersum term '" + term + "'");
      PowerTerm t;
      t.q = std::stod(ql[0]);
      t.lambda = ql.size() == 2 ? std::stod(ql[1]) : 1.0;
      terms.push_back(t);
    }
    return NonlinearityModel::power_sum(d, terms);
  }
  if (head == "exp") {
    auto parts = split(tail, ',');
    if (parts.size() != 3)
      throw ParamOutOfRange("model exp:p,k0,g needs three parameters");
    if (d != 2) throw ParamOutOfRange("exponential model is 2d only");
    return NonlinearityModel::exponential_2d(1.0, std::stod(parts[0]),
                                             std::stod(parts[1]),
                                             std::stod(parts[2]));
  }
  throw ParamOutOfRange("unknown model '" + s + "'");
}

// initial data: "scaled-groundstate:s" or a snapshot path
struct InitData {
  std::function<double(double)> profile;  // radial u0 about the origin
  std::optional<Snapshot> box_snapshot;   // set when the file was a box field
  double m_reference = 0.0;               // threshold when a ground state was shot
  // kept alive for the profile closure
  std::shared_ptr<GroundStateResult> gs;
  std::shared_ptr<RadialGrid> snap_grid;
  std::shared_ptr<std::vector<double>> snap_values;
};

InitData load_init(const std::string& init, const NonlinearityModel& model,
                   int d, double c) {
  InitData data;
  const std::string tag = "scaled-groundstate:";
  if (init.rfind(tag, 0) == 0) {
    const double scale = std::stod(init.substr(tag.size()));
    auto gs = std::make_shared<GroundStateResult>(shoot(model, d, c));
    data.m_reference = gs->m;
    data.gs = gs;
    data.profile = [gs, scale](double r) {
      return scale * radial_interp(gs->grid, gs->Q, r);
    };
    return data;
  }
  Snapshot snap = read_snapshot(init);
  if (snap.kind == Snapshot::Kind::Box) {
    data.box_snapshot = std::move(snap);
    return data;
  }
  auto g = std::make_shared<RadialGrid>(radial_grid_of(snap));
  auto vals = std::make_shared<std::vector<double>>(std::move(snap.values));
  data.snap_grid = g;
  data.snap_values = vals;
  data.profile = [g, vals](double r) { return radial_interp(*g, *vals, r); };
  return data;
}

std::string fmt(double x) { return format_double(x); }

// ---- subcommand state ----

struct CommonOpts {
  std::string out_dir = ".";
  std::string model_str;
  int dim = 1;
  double mass = 1.0;
};

int cmd_groundstate(const CommonOpts& common, double rmax, std::size_t n,
                    double trust, const std::string& out_snapshot,
                    const std::string& report_csv, const std::string& out_json) {
  const auto model = parse_model(common.model_str, common.dim);
  njson j;
  j["model"] = common.model_str;
  j["d"] = common.dim;
  if (model.kind() == NonlinearityKind::CriticalPower) {
    const auto ct = critical_threshold(common.dim, rmax, n);
    j["c"] = 0.0;
    j["m"] = ct.m;
    j["m_sobolev"] = ct.m_sobolev;
    j["grad_sq"] = ct.A;
    j["crit_norm"] = ct.B;
    std::cout << "m=" << fmt(ct.m) << " m_sobolev=" << fmt(ct.m_sobolev)
              << " (massless critical profile)\n";
    if (!out_snapshot.empty()) {
      RadialGrid g(common.dim, ct.r_max, ct.n);
      auto Q = g.sample(
          [&](double r) { return aubin_talenti(common.dim, r); });
      write_snapshot(join_path(common.out_dir, out_snapshot),
                     make_radial_snapshot(g, Q));
    }
    if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
    return 0;
  }
  ShootConfig cfg;
  cfg.r_max = rmax;
  cfg.n = n;
  if (trust > 0) cfg.trust = trust;
  const auto gs = shoot(model, common.dim, common.mass, cfg);
  j["c"] = gs.c;
  j["m"] = gs.m;
  j["Q0"] = gs.Q0;
  j["residual"] = gs.residual;
  j["r_max"] = gs.grid.r_max();
  j["n"] = gs.grid.size();
  std::cout << "m=" << fmt(gs.m) << " Q0=" << fmt(gs.Q0)
            << " residual=" << fmt(gs.residual) << " c=" << fmt(gs.c) << "\n";
  if (!out_snapshot.empty())
    write_snapshot(join_path(common.out_dir, out_snapshot),
                   make_radial_snapshot(gs.grid, gs.Q));
  if (!report_csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& e : gs.K_table)
      rows.push_back({e.sp.alpha, e.sp.beta, e.K, e.KQ});
    write_csv(join_path(common.out_dir, report_csv),
              {"alpha", "beta", "K", "KQ"}, rows);
  }
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  return 0;
}

int cmd_evolve(const CommonOpts& common, const std::string& init,
               const std::string& init_udot, EvolveConfig cfg, double L,
               std::size_t n, bool radial3, double R, std::size_t interior,
               double m_ref, const std::string& out_record,
               const std::string& out_final, const std::string& out_json) {
  const auto model = parse_model(common.model_str, common.dim);
  auto data = load_init(init, model, common.dim, cfg.c);
  if (m_ref > 0) data.m_reference = m_ref;
  cfg.m_reference = data.m_reference;

  std::function<double(double)> u1prof = [](double) { return 0.0; };
  std::optional<Snapshot> udot_snap;
  if (!init_udot.empty()) {
    Snapshot s = read_snapshot(init_udot);
    if (s.kind == Snapshot::Kind::Radial) {
      auto g = std::make_shared<RadialGrid>(radial_grid_of(s));
      auto vals = std::make_shared<std::vector<double>>(std::move(s.values));
      u1prof = [g, vals](double r) { return radial_interp(*g, *vals, r); };
    } else {
      udot_snap = std::move(s);
    }
  }

  RunRecord rec;
  std::optional<BoxGrid> box;
  if (radial3) {
    if (!data.profile)
      throw ParamOutOfRange("the reduced radial integrator needs radial data");
    rec = evolve_radial3(model, data.profile, u1prof, R, interior, cfg);
  } else if (data.box_snapshot) {
    const Snapshot& s = *data.box_snapshot;
    box.emplace(box_grid_of(s));
    StatePair s0{s.values, std::vector<double>(s.values.size(), 0.0)};
    if (udot_snap) {
      if (udot_snap->kind != Snapshot::Kind::Box ||
          udot_snap->values.size() != s.values.size())
        throw GridMismatch("velocity snapshot does not match the field grid");
      s0.u1 = udot_snap->values;
    }
    rec = evolve(*box, model, s0, cfg);
  } else {
    box.emplace(common.dim, L, n);
    StatePair s0{box->sample_radial(data.profile),
                 box->sample_radial(u1prof)};
    rec = evolve(*box, model, s0, cfg);
  }

  if (!out_record.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& s : rec.samples)
      rows.push_back({s.t, s.E, s.EQ, s.y, s.ydot, s.yddot, s.uinf, s.K10,
                      s.Kdm2});
    write_csv(join_path(common.out_dir, out_record),
              {"t", "E", "EQ", "y", "ydot", "yddot", "uinf", "K10", "Kdm2"},
              rows);
  }
  if (!out_final.empty()) {
    const std::string base = join_path(common.out_dir, out_final);
    if (radial3) {
      // the reduced integrator samples at (j+1)h; resample onto the canonical
      // midpoint radial grid with local 4-point interpolation
      const std::size_t m = rec.final_state.u0.size();
      const double h = R / static_cast<double>(m + 1);
      auto interp = [&](const std::vector<double>& v, double r) {
        if (r >= R || v.empty()) return 0.0;
        double s = r / h - 1.0;  // fractional index into v
        long i1 = std::lround(std::floor(s));
        long i0 = i1 - 1, i2 = i1 + 1, i3 = i1 + 2;
        auto at = [&](long i) {
          if (i < 0) return i == -1 ? v[0] : 0.0;  // u is even: v[-1] ~ v[0]
          return i < static_cast<long>(m) ? v[i] : 0.0;
        };
        const double x = s - static_cast<double>(i1);
        return at(i0) * (-x * (x - 1) * (x - 2) / 6.0) +
               at(i1) * ((x + 1) * (x - 1) * (x - 2) / 2.0) +
               at(i2) * (-(x + 1) * x * (x - 2) / 2.0) +
               at(i3) * ((x + 1) * x * (x - 1) / 6.0);
      };
      RadialGrid gout(3, R, m);
      write_snapshot(base, make_radial_snapshot(gout, gout.sample([&](double r) {
                       return interp(rec.final_state.u0, r);
                     })));
      write_snapshot(base + ".udot",
                     make_radial_snapshot(gout, gout.sample([&](double r) {
                       return interp(rec.final_state.u1, r);
                     })));
    } else {
      write_snapshot(base, make_box_snapshot(*box, rec.final_state.u0));
      write_snapshot(base + ".udot",
                     make_box_snapshot(*box, rec.final_state.u1));
    }
  }

  njson j;
  j["model"] = common.model_str;
  j["d"] = common.dim;
  j["outcome"] = outcome_name(rec.outcome);
  j["t_final"] = rec.t_final;
  j["samples"] = rec.samples.size();
  j["cap_exceeded"] = rec.cap_exceeded;
  j["t_cap"] = rec.t_cap;
  j["threshold_adjacent"] = rec.threshold_adjacent;
  j["wraparound_risk"] = rec.wraparound_risk;
  j["blowup"] = njson{{"fired", rec.blowup.fired},
                      {"delta", rec.blowup.delta},
                      {"window_start", rec.blowup.window_start},
                      {"window_end", rec.blowup.window_end}};
  j["dispersal"] = njson{{"fired", rec.dispersal.fired},
                         {"increments", rec.dispersal.increments},
                         {"t_limit", rec.dispersal.t_limit}};
  if (rec.samples.size() >= 2 && rec.samples.front().E != 0.0 &&
      !rec.cap_exceeded)
    j["energy_drift"] = std::abs(rec.samples.back().E - rec.samples.front().E) /
                        std::abs(rec.samples.front().E);
  std::cout << "outcome=" << outcome_name(rec.outcome)
            << " t_final=" << fmt(rec.t_final)
            << " samples=" << rec.samples.size() << "\n";
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  return 0;
}

int cmd_classify(const CommonOpts& common, const std::string& init,
                 double alpha, double beta, double m_override,
                 const std::string& out_json) {
  const auto model = parse_model(common.model_str, common.dim);
  const ScalingPair sp{alpha, beta};
  double m = m_override;
  double c = common.mass;
  if (m <= 0) {
    const auto tr = compute_m(model, common.dim);
    m = tr.m;
    c = tr.c;
  }
  auto data = load_init(init, model, common.dim, c);

  Verdict v;
  if (data.box_snapshot) {
    const Snapshot& s = *data.box_snapshot;
    BoxGrid g = box_grid_of(s);
    StatePair pair{s.values, std::vector<double>(s.values.size(), 0.0)};
    v = box_classify(g, model, pair, sp, m, c);
  } else {
    const double rmax = data.snap_grid ? data.snap_grid->r_max() : 40.0;
    RadialGrid g(common.dim, rmax, 32768);
    StatePair pair{g.sample(data.profile),
                   std::vector<double>(g.size(), 0.0)};
    v = classify(g, model, pair, sp, m, c);
  }

  std::cout << "label=" << label_name(v.label) << " E=" << fmt(v.E)
            << " m=" << fmt(v.m) << " K=" << fmt(v.K) << " KQ=" << fmt(v.KQ)
            << (v.threshold_adjacent ? " threshold_adjacent" : "") << "\n";
  njson j;
  j["model"] = common.model_str;
  j["d"] = common.dim;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["label"] = label_name(v.label);
  j["E"] = v.E;
  j["m"] = v.m;
  j["K"] = v.K;
  j["KQ"] = v.KQ;
  j["threshold_adjacent"] = v.threshold_adjacent;
  j["J"] = v.J;
  j["grad_plus_kinetic"] = v.grad_plus_kinetic;
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  return 0;
}

int cmd_sweep(const CommonOpts& common, SweepSpec spec,
              const std::string& out_csv, const std::string& out_json) {
  const auto rep = run_dichotomy(spec);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rep.rows)
    rows.push_back({r.name, fmt(r.E), fmt(r.EQ), fmt(r.K10),
                    label_name(r.predicted),
                    std::to_string(int(r.pairs_agree)),
                    outcome_name(r.observed), std::to_string(int(r.agree)),
                    std::to_string(int(r.excluded)),
                    std::to_string(int(r.threshold_adjacent)),
                    std::to_string(int(r.small_data)),
                    std::to_string(int(r.k_sign_held)), fmt(r.t_cap),
                    fmt(r.delta), fmt(r.last_increment)});
  if (!out_csv.empty())
    write_mixed_csv(join_path(common.out_dir, out_csv),
                    {"name", "E", "EQ", "K10", "predicted", "pairs_agree",
                     "observed", "agree", "excluded", "threshold_adjacent",
                     "small_data", "k_sign_held", "t_cap", "delta",
                     "last_increment"},
                    rows);
  njson j;
  j["model"] = common.model_str;
  j["d"] = spec.d;
  j["m"] = rep.m;
  j["c"] = rep.c;
  j["pairs"] = rep.pairs.size();
  j["rows"] = rep.rows.size();
  j["disagreements"] = rep.disagreements;
  j["parameter_violations"] = rep.parameter_violations;
  j["excluded_rows"] = rep.excluded_rows;
  njson outcomes = njson::array();
  for (const auto& r : rep.rows)
    outcomes.push_back(njson{{"name", r.name},
                             {"predicted", label_name(r.predicted)},
                             {"outcome", outcome_name(r.observed)},
                             {"agree", r.agree}});
  j["runs"] = outcomes;
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  std::cout << "m=" << fmt(rep.m) << " rows=" << rep.rows.size()
            << " disagreements=" << rep.disagreements
            << " parameter_violations=" << rep.parameter_violations
            << " excluded=" << rep.excluded_rows << " ("
            << fmt(rep.elapsed_seconds) << "s)\n";
  return (rep.disagreements > 0 || rep.parameter_violations > 0) ? 1 : 0;
}

int cmd_audit(const CommonOpts& common, int fields, int pairs, unsigned seed,
              double rmax, std::size_t n, const std::string& out_csv,
              const std::string& out_json) {
  const auto model = parse_model(common.model_str, common.dim);
  const auto tr = compute_m(model, common.dim);
  RadialGrid g(common.dim, rmax, n);
  auto sample = random_subthreshold_fields(g, model, tr.m, fields, seed, tr.c);
  auto sweep = admissible_pair_sweep(common.dim, pairs);
  // the spatial-only pair admits no uniform gap in 2d and is excluded from
  // this audit (it stays in classification sweeps)
  std::vector<ScalingPair> audited;
  for (const auto& p : sweep)
    if (!(common.dim == 2 && p.alpha == 0.0)) audited.push_back(p);

  const auto gap = k_gap_audit(g, model, tr.m, sample, audited, tr.c);
  std::vector<StatePair> states;
  states.reserve(sample.size());
  for (auto& f : sample)
    states.push_back(StatePair{f, std::vector<double>(f.size(), 0.0)});
  const auto eq = energy_equivalence_audit(g, model, states, tr.c);

  if (!out_csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : gap.rows)
      rows.push_back({double(r.field), r.pair.alpha, r.pair.beta, r.J, r.K,
                      r.KQ, r.gap, double(r.violation)});
    write_csv(join_path(common.out_dir, out_csv),
              {"field", "alpha", "beta", "J", "K", "KQ", "gap", "violation"},
              rows);
  }
  njson j;
  j["model"] = common.model_str;
  j["d"] = common.dim;
  j["m"] = tr.m;
  j["c"] = tr.c;
  j["fields"] = fields;
  j["pairs"] = audited.size();
  j["k_gap"] = njson{{"rows_audited", gap.rows_audited},
                     {"delta", gap.delta},
                     {"min_margin", gap.min_margin},
                     {"violations", gap.violations}};
  j["energy_equivalence"] = njson{{"rows_audited", eq.rows_audited},
                                  {"min_lower_slack", eq.min_lower_slack},
                                  {"min_upper_slack", eq.min_upper_slack},
                                  {"violations", eq.violations}};
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  std::cout << "k_gap: audited=" << gap.rows_audited
            << " delta=" << fmt(gap.delta)
            << " min_margin=" << fmt(gap.min_margin)
            << " violations=" << gap.violations << "\n"
            << "energy_equivalence: audited=" << eq.rows_audited
            << " min_lower_slack=" << fmt(eq.min_lower_slack)
            << " min_upper_slack=" << fmt(eq.min_upper_slack)
            << " violations=" << eq.violations << "\n";
  return (gap.violations > 0 || eq.violations > 0) ? 1 : 0;
}

int cmd_appendix_a(const CommonOpts& common, double alpha, double beta,
                   double q, double m_ref, bool m_ref_given,
                   const std::string& out_csv, const std::string& out_json) {
  if (!m_ref_given) {
    const auto tr =
        compute_m(NonlinearityModel::single_power(common.dim, q), common.dim);
    m_ref = tr.m;
  }
  const auto w = appendix_a_scan(common.dim, ScalingPair{alpha, beta}, q, m_ref);
  if (!out_csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : w.rows) rows.push_back({r.nu, r.lambda, r.xi, r.J});
    write_csv(join_path(common.out_dir, out_csv), {"nu", "lambda", "xi", "J"},
              rows);
  }
  njson j;
  j["d"] = common.dim;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["q"] = q;
  j["m_reference"] = m_ref;
  j["construction"] = w.construction;
  j["rows"] = w.rows.size();
  j["monotone"] = w.monotone;
  j["crossed"] = w.crossed;
  j["xi_lattice"] = w.xi_lattice;
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  std::cout << "construction=" << w.construction << " rows=" << w.rows.size()
            << " monotone=" << (w.monotone ? "yes" : "no")
            << " crossed=" << (w.crossed ? "yes" : "no");
  if (!w.rows.empty()) std::cout << " J_last=" << fmt(w.rows.back().J);
  std::cout << "\n";
  return (w.monotone && w.crossed) ? 0 : 1;
}

int cmd_exponents(int d, const std::string& p1s, const std::string& p2s,
                  const std::string& out_dir, const std::string& report_path) {
  const Rational p1 = p1s.empty() ? range_p1(d).midpoint() : Rational::parse(p1s);
  const Rational p2 = p2s.empty() ? range_p2(d).midpoint() : Rational::parse(p2s);
  const auto rep = verify_relations(d, p1, p2);
  std::cout << rep.summary();
  std::cout << (rep.pass ? "PASS" : "FAIL") << " (" << rep.checks.size()
            << " checks, d=" << d << ", p1=" << p1.str() << ", p2=" << p2.str()
            << ")\n";
  if (!report_path.empty()) {
    njson j;
    j["d"] = d;
    j["p1"] = p1.str();
    j["p2"] = p2.str();
    j["pass"] = rep.pass;
    njson checks = njson::array();
    for (const auto& c : rep.checks)
      checks.push_back(njson{{"name", c.name},
                             {"holds", c.holds},
                             {"required", c.required},
                             {"lhs", c.lhs},
                             {"rhs", c.rhs},
                             {"note", c.note}});
    j["checks"] = checks;
    write_json_file(join_path(out_dir, report_path), j);
  }
  return rep.pass ? 0 : 1;
}

int cmd_tm_ratio(const CommonOpts& common, double A, int family_size,
                 const std::string& out_json) {
  const auto model = parse_model(common.model_str, common.dim);
  const auto est = tm_ratio(model, A, family_size);
  std::cout << "ratio=" << fmt(est.ratio) << " threshold=" << fmt(est.threshold)
            << " family=" << est.family
            << " stability_margin=" << fmt(est.stability_margin) << "\n";
  njson j;
  j["model"] = common.model_str;
  j["A"] = est.A;
  j["ratio"] = est.ratio;
  j["threshold"] = est.threshold;
  j["family"] = est.family;
  j["stability_margin"] = est.stability_margin;
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  return 0;
}

int cmd_landscape(const CommonOpts& common, const std::string& init,
                  double alpha, double beta, double lmin, double lmax,
                  int count, const std::string& out_csv,
                  const std::string& out_json) {
  const auto model = parse_model(common.model_str, common.dim);
  auto data = load_init(init, model, common.dim, common.mass);
  if (!data.profile)
    throw ParamOutOfRange("landscape needs radial initial data");
  const double rmax = data.snap_grid ? data.snap_grid->r_max() : 40.0;
  RadialGrid g(common.dim, rmax, 16384);
  auto u = g.sample(data.profile);
  std::vector<double> lambdas;
  for (int i = 0; i < count; ++i)
    lambdas.push_back(count == 1 ? lmin
                                 : lmin + (lmax - lmin) * i / (count - 1.0));
  const auto table =
      landscape(g, model, u, ScalingPair{alpha, beta}, lambdas, common.mass);
  if (!out_csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : table.rows)
      rows.push_back({r.lambda, r.J, r.K, r.F});
    write_csv(join_path(common.out_dir, out_csv), {"lambda", "J", "K", "F"},
              rows);
  }
  njson j;
  j["model"] = common.model_str;
  j["d"] = common.dim;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["rows"] = table.rows.size();
  j["kq_nondecreasing"] = table.kq_nondecreasing;
  j["j_increasing_while_k_positive"] = table.j_increasing_while_k_positive;
  j["truncation_loss"] = table.truncation_loss;
  if (!out_json.empty()) write_json_file(join_path(common.out_dir, out_json), j);
  std::cout << "rows=" << table.rows.size() << " kq_nondecreasing="
            << int(table.kq_nondecreasing) << " j_increasing_while_k_positive="
            << int(table.j_increasing_while_k_positive) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"focusing Klein-Gordon laboratory"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, CommonOpts& c, bool needs_model = true) {
    sub->add_option("--out-dir", c.out_dir, "output directory")
        ->envname("NLKG_OUT_DIR");
    auto* m = sub->add_option(
        "--model", c.model_str,
        "power:q | powersum:q1,l1;q2,l2 | critical | exp:p,k0,g");
    if (needs_model) m->required();
    sub->add_option("--dim", c.dim, "space dimension")->required();
    sub->add_option("--mass", c.mass, "mass coefficient c");
    sub->set_config("--config", "", "flat key=value config file");
    sub->allow_config_extras(CLI::config_extras_mode::error);
  };

  // groundstate
  CommonOpts gs_c;
  double gs_rmax = 0.0, gs_trust = 0.0;
  std::size_t gs_n = 0;
  std::string gs_out, gs_report, gs_json;
  auto* gs = app.add_subcommand("groundstate", "shoot the static profile");
  add_common(gs, gs_c);
  gs->add_option("--rmax", gs_rmax, "shooting domain radius (0: auto)");
  gs->add_option("--n", gs_n, "shooting grid size (0: auto)");
  gs->add_option("--trust", gs_trust, "analytic-tail handover fraction");
  gs->add_option("--out", gs_out, "profile snapshot path");
  gs->add_option("--report", gs_report, "K-table CSV path");
  gs->add_option("--json", gs_json, "summary JSON path");

  // evolve
  CommonOpts ev_c;
  std::string ev_init, ev_init_udot, ev_record, ev_final, ev_json;
  EvolveConfig ev_cfg;
  double ev_L = 80.0, ev_R = 32.0, ev_mref = 0.0;
  std::size_t ev_n = 4096, ev_interior = 4095;
  bool ev_radial3 = false;
  auto* ev = app.add_subcommand("evolve", "integrate the flow");
  add_common(ev, ev_c);
  ev->add_option("--init", ev_init,
                 "snapshot path or scaled-groundstate:<scale>")
      ->required();
  ev->add_option("--init-udot", ev_init_udot, "velocity snapshot path");
  ev->add_option("--T", ev_cfg.T, "integration time");
  ev->add_option("--dt", ev_cfg.dt, "time step (0: stability default)");
  ev->add_option("--sample-dt", ev_cfg.sample_dt, "monitor sampling step");
  ev->add_option("--checkpoints", ev_cfg.checkpoints,
                 "dispersal checkpoint count");
  ev->add_option("--scatter-tol", ev_cfg.scatter_tol,
                 "free-profile Cauchy tolerance");
  ev->add_option("--cap", ev_cfg.amplitude_cap, "sup-norm stop threshold");
  ev->add_option("--m-ref", ev_mref, "threshold for the adjacency flag");
  ev->add_option("--L", ev_L, "box side length");
  ev->add_option("--n", ev_n, "box points per side");
  ev->add_flag("--radial3", ev_radial3, "use the reduced 3d radial integrator");
  ev->add_option("--R", ev_R, "radial domain extent (with --radial3)");
  ev->add_option("--interior", ev_interior,
                 "radial interior nodes (with --radial3)");
  ev->add_option("--out-record", ev_record, "monitor time series CSV path");
  ev->add_option("--out-final", ev_final,
                 "final state snapshot path (velocity at <path>.udot)");
  ev->add_option("--json", ev_json, "summary JSON path");

  // classify
  CommonOpts cl_c;
  std::string cl_init, cl_json;
  double cl_alpha = 1.0, cl_beta = 0.0, cl_m = 0.0;
  auto* cl = app.add_subcommand("classify", "sign test against the threshold");
  add_common(cl, cl_c);
  cl->add_option("--init", cl_init,
                 "snapshot path or scaled-groundstate:<scale>")
      ->required();
  cl->add_option("--alpha", cl_alpha, "scaling pair alpha");
  cl->add_option("--beta", cl_beta, "scaling pair beta");
  cl->add_option("--m", cl_m, "threshold override (0: compute)");
  cl->add_option("--json", cl_json, "verdict JSON path");

  // sweep
  CommonOpts sw_c;
  std::string sw_csv, sw_json;
  int sw_pairs = 20, sw_bumps = 0;
  unsigned sw_seed = 1;
  std::vector<double> sw_scales{0.5, 0.8, 0.95, 1.05, 1.2, 2.0};
  double sw_T = 40.0, sw_sample_dt = 0.004, sw_scatter = 1e-3;
  int sw_checkpoints = 40;
  double sw_L = 80.0, sw_R = 32.0;
  std::size_t sw_n = 4096, sw_interior = 4095;
  bool sw_radial3 = false;
  auto* sw = app.add_subcommand("sweep", "dichotomy experiment batch");
  add_common(sw, sw_c);
  sw->add_option("--pairs", sw_pairs, "admissible pair count");
  sw->add_option("--scales", sw_scales, "ground-state scale grid")
      ->delimiter(',');
  sw->add_option("--bumps", sw_bumps, "extra random subthreshold bumps");
  sw->add_option("--seed", sw_seed, "bump sampling seed");
  sw->add_option("--T", sw_T, "integration time per run");
  sw->add_option("--sample-dt", sw_sample_dt, "monitor sampling step");
  sw->add_option("--checkpoints", sw_checkpoints, "dispersal checkpoints");
  sw->add_option("--scatter-tol", sw_scatter, "free-profile Cauchy tolerance");
  sw->add_option("--L", sw_L, "box side length");
  sw->add_option("--n", sw_n, "box points per side");
  sw->add_flag("--radial3", sw_radial3, "use the reduced 3d radial integrator");
  sw->add_option("--R", sw_R, "radial extent (with --radial3)");
  sw->add_option("--interior", sw_interior, "radial interior nodes");
  sw->add_option("--out-csv", sw_csv, "row table CSV path");
  sw->add_option("--json", sw_json, "summary JSON path");

  // audit
  CommonOpts au_c;
  std::string au_csv, au_json;
  int au_fields = 100, au_pairs = 10;
  unsigned au_seed = 1;
  double au_rmax = 40.0;
  std::size_t au_n = 16384;
  auto* au = app.add_subcommand("audit", "uniform K bound and energy audits");
  add_common(au, au_c);
  au->add_option("--fields", au_fields, "sampled subthreshold fields");
  au->add_option("--pairs", au_pairs, "admissible pair count");
  au->add_option("--seed", au_seed, "field sampling seed");
  au->add_option("--rmax", au_rmax, "radial quadrature extent");
  au->add_option("--n", au_n, "radial quadrature size");
  au->add_option("--out-csv", au_csv, "extremal/violating rows CSV path");
  au->add_option("--json", au_json, "summary JSON path");

  // appendix-a
  CommonOpts axc;
  std::string ax_csv, ax_json;
  double ax_alpha = 0.0, ax_beta = 0.0, ax_q = 0.0, ax_mref = 0.0;
  auto* ax = app.add_subcommand(
      "appendix-a", "action unboundedness outside the admissible cone");
  ax->add_option("--out-dir", axc.out_dir, "output directory")
      ->envname("NLKG_OUT_DIR");
  ax->add_option("--dim", axc.dim, "space dimension")->required();
  ax->add_option("--alpha", ax_alpha, "pair alpha")->required();
  ax->add_option("--beta", ax_beta, "pair beta")->required();
  ax->add_option("--q", ax_q, "pure power exponent")->required();
  auto* ax_mopt =
      ax->add_option("--m-ref", ax_mref, "reference threshold for the floor");
  ax->add_option("--out-csv", ax_csv, "family table CSV path");
  ax->add_option("--json", ax_json, "summary JSON path");
  ax->set_config("--config", "", "flat key=value config file");
  ax->allow_config_extras(CLI::config_extras_mode::error);

  // exponents
  int ex_d = 3;
  std::string ex_p1, ex_p2, ex_report, ex_outdir = ".";
  auto* ex = app.add_subcommand("exponents", "exact exponent relation checks");
  ex->add_option("--dim", ex_d, "space dimension")->required();
  ex->add_option("--p1", ex_p1, "small-power exponent, rational a/b");
  ex->add_option("--p2", ex_p2, "large-power exponent, rational a/b");
  ex->add_option("--report", ex_report, "relations JSON path");
  ex->add_option("--out-dir", ex_outdir, "output directory")
      ->envname("NLKG_OUT_DIR");
  ex->set_config("--config", "", "flat key=value config file");
  ex->allow_config_extras(CLI::config_extras_mode::error);

  // tm-ratio
  CommonOpts tm_c;
  std::string tm_json;
  double tm_A = 1.0;
  int tm_family = 16;
  auto* tm = app.add_subcommand("tm-ratio", "sharp-constant ratio estimate");
  add_common(tm, tm_c);
  tm->add_option("--A", tm_A, "gradient norm budget")->required();
  tm->add_option("--family-size", tm_family, "parametric family resolution");
  tm->add_option("--json", tm_json, "summary JSON path");

  // landscape
  CommonOpts ls_c;
  std::string ls_init, ls_csv, ls_json;
  double ls_alpha = 1.0, ls_beta = 0.0, ls_lmin = 0.0, ls_lmax = 1.0;
  int ls_count = 21;
  auto* ls = app.add_subcommand("landscape", "J and K along a scaling ray");
  add_common(ls, ls_c);
  ls->add_option("--init", ls_init,
                 "snapshot path or scaled-groundstate:<scale>")
      ->required();
  ls->add_option("--alpha", ls_alpha, "scaling pair alpha");
  ls->add_option("--beta", ls_beta, "scaling pair beta");
  ls->add_option("--lambda-min", ls_lmin, "ray parameter start");
  ls->add_option("--lambda-max", ls_lmax, "ray parameter end");
  ls->add_option("--lambda-count", ls_count, "ray sample count");
  ls->add_option("--out-csv", ls_csv, "table CSV path");
  ls->add_option("--json", ls_json, "summary JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gs->parsed())
      return cmd_groundstate(gs_c, gs_rmax, gs_n, gs_trust, gs_out, gs_report,
                             gs_json);
    if (ev->parsed()) {
      ev_cfg.c = ev_c.mass;
      return cmd_evolve(ev_c, ev_init, ev_init_udot, ev_cfg, ev_L, ev_n,
                        ev_radial3, ev_R, ev_interior, ev_mref, ev_record,
                        ev_final, ev_json);
    }
    if (cl->parsed())
      return cmd_classify(cl_c, cl_init, cl_alpha, cl_beta, cl_m, cl_json);
    if (sw->parsed()) {
      SweepSpec spec(parse_model(sw_c.model_str, sw_c.dim));
      spec.d = sw_c.dim;
      spec.box_length = sw_L;
      spec.box_n = sw_n;
      spec.use_radial3 = sw_radial3;
      spec.radial_extent = sw_R;
      spec.radial_interior = sw_interior;
      spec.pair_count = sw_pairs;
      spec.ground_state_scales = sw_scales;
      spec.random_bumps = sw_bumps;
      spec.seed = sw_seed;
      spec.run.T = sw_T;
      spec.run.sample_dt = sw_sample_dt;
      spec.run.checkpoints = sw_checkpoints;
      spec.run.scatter_tol = sw_scatter;
      return cmd_sweep(sw_c, std::move(spec), sw_csv, sw_json);
    }
    if (au->parsed())
      return cmd_audit(au_c, au_fields, au_pairs, au_seed, au_rmax, au_n,
                       au_csv, au_json);
    if (ax->parsed())
      return cmd_appendix_a(axc, ax_alpha, ax_beta, ax_q, ax_mref,
                            ax_mopt->count() > 0, ax_csv, ax_json);
    if (ex->parsed()) return cmd_exponents(ex_d, ex_p1, ex_p2, ex_outdir, ex_report);
    if (tm->parsed()) return cmd_tm_ratio(tm_c, tm_A, tm_family, tm_json);
    if (ls->parsed())
      return cmd_landscape(ls_c, ls_init, ls_alpha, ls_beta, ls_lmin, ls_lmax,
                           ls_count, ls_csv, ls_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
