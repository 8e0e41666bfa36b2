#include "blip/cli/commands.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "blip/error.hpp"
#include "blip/fields.hpp"
#include "blip/scattering.hpp"
#include "blip/spectral.hpp"

namespace blip::cli {
namespace {

constexpr const char* kToolVersion = "1.0.0";

Check make_check(std::string name, double measured, double expected, double tolerance) {
  // Relative to the expected value unless that value is (close to) zero.
  const double scale = std::abs(expected) > 1e-3 ? std::abs(expected) : 1.0;
  return Check{std::move(name), measured, expected, tolerance, std::abs(measured - expected) <= tolerance * scale};
}

double spectral_peak(const BlipWavePacket& p) {
  const SpectralWavePacket sp = to_momentum(p);
  const Grid& g = sp.grid();
  std::size_t best = 0;
  double best_w = -1.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    double w = 0.0;
    for (Channel ch : kAllChannels) w += std::norm(sp[ch][m]);
    if (w > best_w) {
      best_w = w;
      best = m;
    }
  }
  return g.k(best);
}

std::vector<double> field_intensity(const BlipWavePacket& p, const DirectionalMedia& media) {
  std::vector<double> out(p.grid().size(), 0.0);
  for (Direction s : {Direction::minus, Direction::plus}) {
    const BlipWavePacket part = p.restricted(s);
    bool any = false;
    for (Channel ch : kAllChannels) any = any || part.has_support(ch);
    if (!any) continue;
    const FieldProfile fp = field_profile(to_momentum(part), media(s));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += std::norm(fp.e_y[j]) + std::norm(fp.e_z[j]);
  }
  return out;
}

Table snapshot_table(const BlipWavePacket& p, const std::vector<double>& e2) {
  const Grid& g = p.grid();
  const SpectralWavePacket sp = to_momentum(p);
  Table t({"x", "abs2_psi", "k", "abs2_psi_k", "abs2_e"}, {false, false, false, false, false});
  for (std::size_t j = 0; j < g.size(); ++j) {
    double px = 0.0;
    double pk = 0.0;
    for (Channel ch : kAllChannels) {
      px += std::norm(p[ch][j]);
      pk += std::norm(sp[ch][j]);
    }
    t.add_row({format_real(g.x(j)), format_real(px), format_real(g.k(j)), format_real(pk), format_real(e2[j])});
  }
  return t;
}

Direction incidence_of(const BlipWavePacket& p) {
  bool plus = false;
  bool minus = false;
  for (Channel ch : kAllChannels) {
    if (!p.has_support(ch)) continue;
    (ch.s == Direction::plus ? plus : minus) = true;
  }
  if (plus == minus) throw Error(ErrorKind::configuration, "the packet must occupy exactly one direction");
  return plus ? Direction::plus : Direction::minus;
}

void write_summary(const RunConfig& cfg, const RunSummary& s, std::ostream& os) {
  auto report = [](JsonWriter& w, const ObservableReport& r) {
    w.begin_object();
    w.field("photon_number", r.photon_number);
    w.field("energy", r.energy);
    w.field("dyn_hamiltonian", r.dyn_hamiltonian);
    w.field("dyn_momentum", r.dyn_momentum);
    w.field("field_momentum", r.field_momentum);
    w.field("abraham_momentum", r.abraham_momentum);
    w.field("medium_tag", std::string_view(r.medium_tag));
    w.end_object();
  };
  auto complex = [](JsonWriter& w, std::string_view k, Complex z) {
    w.key(k).begin_array().value(z.real()).value(z.imag()).end_array();
  };

  JsonWriter w(os);
  w.begin_object();
  w.field("tool_version", kToolVersion);
  w.field("scenario_tag", std::string_view(s.scenario_tag));
  w.field("incidence", s.incidence == Direction::plus ? "+1" : "-1");
  w.field("relative_index", s.relative_index);
  w.key("grid").begin_object();
  w.field("x_min", cfg.grid.x_min).field("x_max", cfg.grid.x_max).field("n_points", cfg.grid.n_points);
  w.end_object();
  w.key("packet").begin_object();
  w.field("channel", to_string(cfg.packet.channel));
  w.field("x0", cfg.packet.x0).field("k0", cfg.packet.k0).field("sigma", cfg.packet.sigma);
  w.end_object();
  w.key("rates").begin_object();
  complex(w, "t_minus", s.rates.t_minus);
  complex(w, "t_plus", s.rates.t_plus);
  complex(w, "r_minus", s.rates.r_minus);
  complex(w, "r_plus", s.rates.r_plus);
  w.end_object();
  w.key("crossing_window").begin_object();
  w.field("contact", s.window.contact).field("clear", s.window.clear);
  w.end_object();
  w.field("final_time", s.final_time);
  w.key("input");
  report(w, s.input);
  w.key("final_total");
  report(w, s.final_total);
  w.key("transmitted_conditional");
  if (s.transmitted_conditional) {
    report(w, *s.transmitted_conditional);
  } else {
    w.raw("null");
  }
  w.field("prob_t", s.prob_t).field("prob_r", s.prob_r);
  w.field("norm_t", s.norm_t).field("norm_r", s.norm_r);
  w.field("transmitted_peak_k", s.transmitted_peak_k);
  w.field("resample_drift", s.resample_drift);
  w.field("guard_residual", s.guard_residual);
  w.key("checks").begin_array();
  for (const Check& c : s.checks) {
    w.begin_object();
    w.field("name", std::string_view(c.name));
    w.field("measured", c.measured).field("expected", c.expected).field("tolerance", c.tolerance);
    w.field("pass", c.pass);
    w.end_object();
  }
  w.end_array();
  w.field("all_pass", s.all_pass());
  w.end_object();
  w.finish();
}

std::string render(const Table& t, Format f) {
  std::ostringstream os;
  if (f == Format::csv) {
    t.write_csv(os);
  } else {
    JsonWriter w(os);
    t.write_json(w);
    w.finish();
  }
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorKind::domain, fmt::format("cannot write '{}'", path.string()));
}

template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::configuration ? exit_code::config_error : exit_code::runtime_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::runtime_error;
  }
}

}  // namespace

bool RunSummary::all_pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

RunArtifacts execute_run(const RunConfig& cfg) {
  const Scenario sc = build_scenario(cfg);
  const Direction s = incidence_of(sc.initial);
  const ScenarioResult res = run_scenario(sc);
  if (!res.outcome) {
    throw Error(ErrorKind::not_asymptotic,
                fmt::format("the schedule ends at t = {} before the crossing window closes at t = {}",
                            sc.schedule.back(), res.window.clear));
  }
  const ScatterOutcome& out = *res.outcome;
  const double n = sc.left.speed() / sc.right.speed();
  const ScatterRates& r = res.rates;

  RunSummary sum;
  sum.scenario_tag = out.scenario_tag;
  sum.incidence = s;
  sum.relative_index = n;
  sum.rates = r;
  sum.window = res.window;
  sum.input = res.input;
  sum.final_time = sc.schedule.back();
  for (const Snapshot& snap : res.series)
    if (snap.time == sum.final_time && snap.branch == BranchTag::total) sum.final_total = snap.report;
  sum.prob_t = out.prob_t;
  sum.prob_r = out.prob_r;
  const double n_in = norm(sc.initial);
  sum.norm_t = norm(out.transmitted) / n_in;
  sum.norm_r = norm(out.reflected) / n_in;
  sum.transmitted_peak_k = spectral_peak(out.transmitted);
  sum.resample_drift = out.resample_drift;
  sum.guard_residual = out.guard_residual;

  const Tolerances& tol = cfg.tolerance;
  const double p_in = sum.input.dyn_momentum;
  const double momentum_expected = s == Direction::plus
                                       ? n * std::norm(r.t_plus) - std::norm(r.r_plus)
                                       : std::norm(r.t_minus) / n - std::norm(r.r_minus);
  const double factor = s == Direction::plus ? n : 1.0 / n;

  sum.checks.push_back(make_check("energy_ratio", sum.final_total.energy / sum.input.energy, 1.0, tol.energy));
  sum.checks.push_back(
      make_check("momentum_ratio", sum.final_total.dyn_momentum / p_in, momentum_expected, tol.momentum));
  sum.checks.push_back(make_check("probability_sum", sum.prob_t + sum.prob_r, 1.0, tol.unitarity));
  sum.checks.push_back(make_check("branch_norm_sum", sum.norm_t + sum.norm_r, 1.0, tol.unitarity));
  if (sum.norm_t > 1e-12) {
    sum.transmitted_conditional = conditional_expectations(out, Branch::transmitted);
    sum.checks.push_back(make_check("conditional_momentum_ratio", sum.transmitted_conditional->dyn_momentum / p_in,
                                    factor, tol.conditional));
    // each channel's spectrum lives in its own k variable, so no sign here
    const double k_in = cfg.packet.k0;
    const double dk = sc.initial.grid().dk();
    sum.checks.push_back(Check{"transmitted_peak_k", sum.transmitted_peak_k, factor * k_in, dk,
                               std::abs(sum.transmitted_peak_k - factor * k_in) <= dk});
  }

  RunArtifacts art{std::move(sum),
                   Table({"time", "branch", "norm", "centroid", "energy", "dyn_momentum", "field_momentum",
                          "abraham_momentum", "asymptotic"},
                         {false, true, false, false, false, false, false, false, false}),
                   {}};
  for (const Snapshot& snap : res.series) {
    const ObservableReport& rep = snap.report;
    art.timeseries.add_row({format_real(snap.time), to_string(snap.branch), format_real(rep.photon_number),
                            format_real(snap.centroid), format_real(rep.energy), format_real(rep.dyn_momentum),
                            format_real(rep.field_momentum), format_real(rep.abraham_momentum),
                            snap.asymptotic ? "true" : "false"});
  }

  if (cfg.output.snapshots) {
    const DirectionalMedia incoming{sc.left, sc.right};
    const DirectionalMedia outgoing{sc.right, sc.left};
    for (std::size_t i = 0; i < sc.schedule.size(); ++i) {
      const double t = sc.schedule[i];
      const BlipWavePacket& p = res.states[i];
      std::vector<double> e2;
      if (t <= res.window.contact) {
        e2 = field_intensity(p, incoming);
      } else if (t >= res.window.clear) {
        e2 = field_intensity(p, outgoing);
      } else {
        // Inside the window the fields follow the medium at each point.
        const auto left = field_intensity(p, DirectionalMedia{sc.left, sc.left});
        const auto right = field_intensity(p, DirectionalMedia{sc.right, sc.right});
        e2.resize(left.size());
        for (std::size_t j = 0; j < e2.size(); ++j) e2[j] = p.grid().x(j) < 0.0 ? left[j] : right[j];
      }
      art.snapshots.push_back(snapshot_table(p, e2));
    }
  }
  return art;
}

CheckResult execute_check(const CheckArgs& args) {
  if (!(args.n_min > 0.0) || !(args.n_max >= args.n_min) || !std::isfinite(args.n_max)) {
    throw Error(ErrorKind::configuration,
                fmt::format("check needs 0 < n_min <= n_max (got {} and {})", args.n_min, args.n_max));
  }
  if (args.steps < 1) throw Error(ErrorKind::configuration, "check needs at least one step");

  struct Row {
    double n, r_minus, r_plus, t, omega_im, roundtrip, cross, plus, minus;
    double ratio_am, ratio_ma, closed_am, closed_ma, post_am, post_ma, energy_am, energy_ma;
    bool pass;
  };
  std::vector<Row> rows(args.steps);
  const auto count = static_cast<std::int64_t>(args.steps);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const double n = args.steps == 1 ? args.n_min
                                     : args.n_min + (args.n_max - args.n_min) * static_cast<double>(i) /
                                                        static_cast<double>(args.steps - 1);
    const ScatterRates f = fresnel_rates(n);
    const MirrorCoupling mc = omega_from_n(n, 1.0);
    const ScatterRates o = rates_from_omega(mc);
    const double roundtrip = std::max({std::abs(o.t_minus - f.t_minus), std::abs(o.t_plus - f.t_plus),
                                       std::abs(o.r_minus - f.r_minus), std::abs(o.r_plus - f.r_plus)});
    const StokesResiduals st = stokes_residuals(f);
    Row row{};
    row.n = n;
    row.r_minus = f.r_minus.real();
    row.r_plus = f.r_plus.real();
    row.t = f.t_plus.real();
    row.omega_im = mc.omega.imag();
    row.roundtrip = roundtrip;
    row.cross = st.cross;
    row.plus = st.plus;
    row.minus = st.minus;
    row.ratio_am = n * std::norm(f.t_plus) - std::norm(f.r_plus);
    row.ratio_ma = std::norm(f.t_minus) / n - std::norm(f.r_minus);
    row.closed_am = (3.0 * n - 1.0) / (n + 1.0);
    row.closed_ma = (3.0 - n) / (n + 1.0);
    // momentum of the transmitted branch per transmitted photon, relative to the input
    row.post_am = n * std::norm(f.t_plus) / std::norm(f.t_plus);
    row.post_ma = std::norm(f.t_minus) / n / std::norm(f.t_minus);
    row.energy_am = std::norm(f.t_plus) + std::norm(f.r_plus);
    row.energy_ma = std::norm(f.t_minus) + std::norm(f.r_minus);
    constexpr double tol = 1e-12;
    row.pass = roundtrip < tol && st.max() < tol && std::abs(row.ratio_am - row.closed_am) < tol &&
               std::abs(row.ratio_ma - row.closed_ma) < tol && std::abs(row.energy_am - 1.0) < tol &&
               std::abs(row.energy_ma - 1.0) < tol && std::abs(row.post_am - n) < tol &&
               std::abs(row.post_ma - 1.0 / n) < tol;
    rows[static_cast<std::size_t>(i)] = row;
  }

  CheckResult res{Table({"n", "r_minus", "r_plus", "t", "omega_im", "roundtrip_residual", "stokes_cross",
                         "stokes_plus", "stokes_minus", "momentum_ratio_air_to_medium",
                         "momentum_ratio_medium_to_air", "closed_form_air_to_medium", "closed_form_medium_to_air",
                         "post_selected_air_to_medium", "post_selected_medium_to_air", "energy_ratio_air_to_medium",
                         "energy_ratio_medium_to_air", "pass"},
                        std::vector<bool>(18, false)),
                  true};
  for (const Row& r : rows) {
    res.table.add_row({format_real(r.n), format_real(r.r_minus), format_real(r.r_plus), format_real(r.t),
                       format_real(r.omega_im), format_real(r.roundtrip), format_real(r.cross),
                       format_real(r.plus), format_real(r.minus), format_real(r.ratio_am), format_real(r.ratio_ma),
                       format_real(r.closed_am), format_real(r.closed_ma), format_real(r.post_am),
                       format_real(r.post_ma), format_real(r.energy_am), format_real(r.energy_ma),
                       r.pass ? "true" : "false"});
    res.all_pass = res.all_pass && r.pass;
  }
  return res;
}

DysonResult execute_dyson(const DysonArgs& args) {
  if (!(args.q >= 0.0) || !std::isfinite(args.q)) {
    throw Error(ErrorKind::configuration, fmt::format("dyson needs a finite q >= 0 (got {})", args.q));
  }
  if (args.terms < 1) throw Error(ErrorKind::configuration, "dyson needs at least one order");

  const MirrorCoupling mc{Complex(0.0, -2.0 * args.q), 1.0};
  const auto sums = dyson_partial_sums(mc, args.terms);
  DysonResult res{Table({}, {}), args.q < 1.0, true};

  if (res.convergent) {
    const ScatterRates closed = rates_from_omega(mc);
    res.table = Table({"order", "t_re", "t_im", "r_re", "r_im", "t_error", "r_error", "t_bound", "r_bound", "status"},
                      {false, false, false, false, false, false, false, false, false, true});
    for (const auto& ps : sums) {
      const double t_err = std::abs(ps.t - closed.t_plus);
      const double r_err = std::abs(ps.r - closed.r_plus);
      const double t_bound = dyson_t_bound(args.q, ps.order);
      const double r_bound = dyson_r_bound(args.q, ps.order);
      const bool ok = t_err <= t_bound && r_err <= r_bound;
      res.within_bounds = res.within_bounds && ok;
      res.table.add_row({std::to_string(ps.order), format_real(ps.t.real()), format_real(ps.t.imag()),
                         format_real(ps.r.real()), format_real(ps.r.imag()), format_real(t_err), format_real(r_err),
                         format_real(t_bound), format_real(r_bound), ok ? "within_bound" : "exceeds_bound"});
    }
  } else {
    res.table = Table({"order", "t_re", "t_im", "r_re", "r_im", "term_magnitude", "status"},
                      {false, false, false, false, false, false, true});
    for (const auto& ps : sums) {
      const double term = ps.order == 0 ? 1.0 : 2.0 * std::pow(args.q, 2.0 * static_cast<double>(ps.order));
      res.table.add_row({std::to_string(ps.order), format_real(ps.t.real()), format_real(ps.t.imag()),
                         format_real(ps.r.real()), format_real(ps.r.imag()), format_real(term), "divergent"});
    }
  }
  return res;
}

int run_command(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opts.config) throw Error(ErrorKind::configuration, "run needs --config PATH");
    const RunConfig cfg = load_run_config(*opts.config);
    const RunArtifacts art = execute_run(cfg);

    // Render everything first so that a failure leaves no partial output.
    std::ostringstream summary;
    write_summary(cfg, art.summary, summary);
    const std::string ext = opts.format == Format::csv ? "csv" : "json";
    const std::string series = render(art.timeseries, opts.format);
    std::vector<std::string> snaps;
    for (const Table& t : art.snapshots) snaps.push_back(render(t, opts.format));

    const std::filesystem::path dir = opts.out.value_or(cfg.output.dir.value_or("blip_out"));
    std::filesystem::create_directories(dir);
    write_file(dir / "summary.json", summary.str());
    write_file(dir / ("timeseries." + ext), series);
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      write_file(dir / fmt::format("snapshot_{:03d}.{}", i, ext), snaps[i]);
    }

    for (const Check& c : art.summary.checks) {
      out << fmt::format("{:<28} measured {} expected {} tolerance {} {}\n", c.name, format_real(c.measured),
                         format_real(c.expected), format_real(c.tolerance), c.pass ? "PASS" : "FAIL");
    }
    out << "wrote " << dir.string() << '\n';
    return opts.strict && !art.summary.all_pass() ? exit_code::tolerance_breach : exit_code::ok;
  });
}

int check_command(const CheckArgs& args, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CheckResult res = execute_check(args);
    const std::string text = render(res.table, opts.format);
    if (opts.out) {
      std::filesystem::create_directories(*opts.out);
      write_file(*opts.out / (opts.format == Format::csv ? "check.csv" : "check.json"), text);
    }
    out << text;
    return opts.strict && !res.all_pass ? exit_code::tolerance_breach : exit_code::ok;
  });
}

int dyson_command(const DysonArgs& args, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DysonResult res = execute_dyson(args);
    const std::string text = render(res.table, opts.format);
    if (opts.out) {
      std::filesystem::create_directories(*opts.out);
      write_file(*opts.out / (opts.format == Format::csv ? "dyson.csv" : "dyson.json"), text);
    }
    out << text;
    if (!res.convergent) err << fmt::format("divergent: |Omega|/2c = {} >= 1\n", format_real(args.q));
    return opts.strict && !res.within_bounds ? exit_code::tolerance_breach : exit_code::ok;
  });
}

}  // namespace blip::cli
