#include "xyghz/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "xyghz/critical.hpp"
#include "xyghz/swapnet.hpp"
#include "xyghz/teleport.hpp"
#include "xyghz/xychain.hpp"

namespace xyghz::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Flags {
  std::string J = "1";
  std::string gamma = "0";
  std::string eta = "0";
  std::string T = "1";
  std::string mu;
  std::string out;
  std::string format = "csv";
  int precision = 6;
  int kind = 1;
  std::string gammas = "0,0.3,0.6,1";
  std::string eta_max = "2";
  int steps = 80;
};

double flag_value(const std::string& text, const char* flag) {
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": expected a real number, got '" + text + "'");
  }
}

ChainParams chain_params(const Flags& f, bool need_temperature) {
  ChainParams p;
  p.J = flag_value(f.J, "--J");
  p.gamma = flag_value(f.gamma, "--gamma");
  p.eta = flag_value(f.eta, "--eta");
  p.T = need_temperature ? flag_value(f.T, "--T") : 1.0;
  if (!std::isfinite(p.J)) throw UsageError("--J must be finite");
  if (!(p.gamma >= -1.0 && p.gamma <= 1.0)) throw UsageError("--gamma must lie in [-1, 1]");
  if (!std::isfinite(p.eta)) throw UsageError("--eta must be finite");
  if (!(p.T >= 0.0) || std::isnan(p.T)) throw UsageError("--T must be >= 0");
  if (need_temperature && p.T == 0.0 && p.J == 0.0) {
    throw UsageError("--J must be nonzero when --T is 0");
  }
  return p;
}

void require_solver_domain(const ChainParams& p) {
  if (!(p.J > 0.0)) throw UsageError("--J must be > 0 for this command");
  if (!(p.gamma >= 0.0)) throw UsageError("--gamma must lie in [0, 1] for this command");
  if (!(p.eta >= 0.0)) throw UsageError("--eta must be >= 0 for this command");
}

TeleportConfig teleport_config(const Flags& f) {
  TeleportConfig cfg;
  if (!f.mu.empty()) cfg.mu = flag_value(f.mu, "--mu");
  if (!(cfg.mu >= 0.0 && cfg.mu <= std::numbers::pi / 4.0 + 1e-12)) {
    throw UsageError("--mu must lie in [0, pi/4]");
  }
  return cfg;
}

Table state_table(const ChainParams& p) {
  const DensityOp rho = chain_state(p);
  Table t{{{"row", ColumnFormat::kInteger},
           {"col", ColumnFormat::kInteger},
           {"re", ColumnFormat::kFixed},
           {"im", ColumnFormat::kFixed}},
          {}};
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      t.rows.push_back({std::int64_t{r}, std::int64_t{c}, rho(r, c).real(), rho(r, c).imag()});
    }
  }
  return t;
}

std::vector<Column> param_columns() {
  return {{"J", ColumnFormat::kShortest},
          {"gamma", ColumnFormat::kShortest},
          {"eta", ColumnFormat::kShortest},
          {"T", ColumnFormat::kShortest}};
}

Table metrics_table(const ChainParams& p) {
  const PairMetrics m = pair_metrics(p);
  const DensityOp rho = chain_state(p);
  Table t{param_columns(), {}};
  for (const char* name : {"lambda1", "lambda2", "lambda3", "lambda4", "concurrence", "fef",
                           "concurrence_oracle", "fef_oracle"}) {
    t.schema.push_back({name, ColumnFormat::kFixed});
  }
  t.rows.push_back({p.J, p.gamma, p.eta, p.T, m.lambdas[0], m.lambdas[1], m.lambdas[2],
                    m.lambdas[3], m.concurrence, m.fef, wootters_concurrence(rho),
                    bell_fraction(rho)});
  return t;
}

Table swap_table(const ChainParams& p) {
  const SwapResult s = swap_all(p);
  Table t{{{"outcome", ColumnFormat::kInteger},
           {"probability", ColumnFormat::kFixed},
           {"purity", ColumnFormat::kFixed}},
          {}};
  for (int i = 0; i < 8; ++i) {
    const SwapOutcome& o = s.outcomes[static_cast<std::size_t>(i)];
    t.rows.push_back({std::int64_t{i}, o.probability, o.state ? o.state->purity() : 0.0});
  }
  return t;
}

Table fidelity_table(const ChainParams& p, const TeleportConfig& cfg) {
  const TeleportResult r = teleport_report(p, cfg);
  Table t{param_columns(), {}};
  t.schema.push_back({"mu", ColumnFormat::kShortest});
  for (const char* name : {"c1", "c2", "phi_closed", "phi_simulated", "difference"}) {
    t.schema.push_back({name, ColumnFormat::kFixed});
  }
  const double sim = *r.phi_simulated;
  t.rows.push_back({p.J, p.gamma, p.eta, p.T, cfg.mu, r.c1, r.c2, r.phi_closed, sim,
                    sim - r.phi_closed});
  return t;
}

Table critical_table(const CriticalResult& r) {
  return Table{{{"kind", ColumnFormat::kInteger},
                {"gamma", ColumnFormat::kShortest},
                {"eta", ColumnFormat::kShortest},
                {"t_over_j", ColumnFormat::kFixed},
                {"bracket_lo", ColumnFormat::kFixed},
                {"bracket_hi", ColumnFormat::kFixed},
                {"converged", ColumnFormat::kInteger},
                {"crossings", ColumnFormat::kInteger}},
               {{std::int64_t{static_cast<int>(r.kind)}, r.gamma, r.eta, r.t_over_j, r.bracket_lo,
                 r.bracket_hi, std::int64_t{r.converged ? 1 : 0}, std::int64_t{r.crossings}}}};
}

void write_output(const Table& table, const Flags& f, std::ostream& out) {
  std::string text;
  if (f.format == "csv") {
    text = emit_csv(table, f.precision);
  } else {
    text = emit_json(table);
  }
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw UsageError("--out: cannot open '" + f.out + "' for writing");
  file << text;
}

}  // namespace

Table table1(double J) {
  std::vector<double> etas;
  for (int n = 0; n < 10; ++n) etas.push_back(n / 10.0);
  const auto t2 = sweep(CriticalKind::kBellFraction, 0.0, etas, J);
  const auto t3 = sweep(CriticalKind::kFidelity, 0.0, etas, J);

  Table t;
  t.schema.push_back({"eta", ColumnFormat::kText});
  for (double eta : etas) t.schema.push_back({format_cell(eta, ColumnFormat::kShortest, 0)});
  Row r2{std::string("t2_over_j")};
  Row r3{std::string("t3_over_j")};
  for (std::size_t n = 0; n < etas.size(); ++n) {
    if (!t2[n].converged || !t3[n].converged) {
      throw ConvergenceError("table1: solver did not converge at eta = " +
                             std::to_string(etas[n]));
    }
    r2.emplace_back(t2[n].t_over_j);
    r3.emplace_back(t3[n].t_over_j);
  }
  t.rows = {std::move(r2), std::move(r3)};
  return t;
}

Table fig1(const std::vector<double>& gammas, double eta_max, int steps, bool* converged) {
  if (steps < 1) throw UsageError("--steps must be >= 1");
  if (!(eta_max > 0.0) || !std::isfinite(eta_max)) throw UsageError("--eta-max must be > 0");
  if (gammas.empty()) throw UsageError("--gammas must list at least one value");
  for (double g : gammas) {
    if (!(g >= 0.0 && g <= 1.0)) throw UsageError("--gammas values must lie in [0, 1]");
  }
  std::vector<double> etas;
  for (int n = 0; n <= steps; ++n) etas.push_back(eta_max * n / steps);

  Table t{{{"gamma", ColumnFormat::kShortest},
           {"eta", ColumnFormat::kShortest},
           {"t3_over_j", ColumnFormat::kFixed}},
          {}};
  bool ok = true;
  for (double g : gammas) {
    for (const CriticalResult& r : sweep(CriticalKind::kFidelity, g, etas, 1.0)) {
      ok = ok && r.converged;
      t.rows.push_back({g, r.eta, r.t_over_j});
    }
  }
  if (converged != nullptr) *converged = ok;
  return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal XY-chain entanglement swapping and teleportation fidelity", "xyghz"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* cmd, bool chain, bool temperature) {
    if (chain) {
      cmd->add_option("--J", f.J, "coupling J");
      cmd->add_option("--gamma", f.gamma, "anisotropy gamma");
      cmd->add_option("--eta", f.eta, "field ratio eta (B_m = eta J)");
    }
    if (temperature) cmd->add_option("--T", f.T, "temperature (k = 1)");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--precision", f.precision, "digits after the decimal point")
        ->check(CLI::Range(0, 17));
  };

  auto* state = app.add_subcommand("state", "two-qubit chain density matrix");
  add_common(state, true, true);
  auto* metrics = app.add_subcommand("metrics", "lambdas, concurrence and Bell fraction");
  add_common(metrics, true, true);
  auto* swap = app.add_subcommand("swap", "GHZ-measurement outcomes of three swapped chains");
  add_common(swap, true, true);
  auto* fidelity = app.add_subcommand("fidelity", "closed-form and simulated fidelity");
  add_common(fidelity, true, true);
  fidelity->add_option("--mu", f.mu, "B-measurement angle in [0, pi/4] (default pi/4)");
  auto* critical = app.add_subcommand("critical", "critical temperature for one (gamma, eta)");
  add_common(critical, true, false);
  critical->add_option("--kind", f.kind, "1 concurrence, 2 Bell fraction, 3 fidelity")
      ->check(CLI::IsMember({1, 2, 3}));
  auto* t1 = app.add_subcommand("table1", "T2/J and T3/J at gamma = 0, eta = 0..0.9");
  add_common(t1, false, false);
  auto* f1 = app.add_subcommand("fig1", "T3/J versus eta for several gamma");
  add_common(f1, false, false);
  f1->add_option("--gammas", f.gammas, "comma-separated anisotropies");
  f1->add_option("--eta-max", f.eta_max, "largest eta");
  f1->add_option("--steps", f.steps, "number of eta intervals");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    int code = kSuccess;
    Table table;
    if (state->parsed()) {
      table = state_table(chain_params(f, true));
    } else if (metrics->parsed()) {
      table = metrics_table(chain_params(f, true));
    } else if (swap->parsed()) {
      table = swap_table(chain_params(f, true));
    } else if (fidelity->parsed()) {
      const ChainParams p = chain_params(f, true);
      if (!(p.J > 0.0)) throw UsageError("--J must be > 0 for fidelity");
      table = fidelity_table(p, teleport_config(f));
    } else if (critical->parsed()) {
      const ChainParams p = chain_params(f, false);
      require_solver_domain(p);
      const CriticalResult r = solve_critical(critical_kind_from_int(f.kind), p.gamma, p.eta, p.J);
      if (!r.converged) code = kNonConvergence;
      table = critical_table(r);
    } else if (t1->parsed()) {
      table = table1();
    } else {
      bool ok = true;
      std::vector<double> gammas;
      try {
        gammas = parse_double_list(f.gammas);
      } catch (const std::invalid_argument&) {
        throw UsageError("--gammas: expected a comma-separated list of reals");
      }
      table = fig1(gammas, flag_value(f.eta_max, "--eta-max"), f.steps, &ok);
      if (!ok) code = kNonConvergence;
    }
    write_output(table, f, out);
    if (code == kNonConvergence) err << "error: root finder did not converge\n";
    return code;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace xyghz::cli
