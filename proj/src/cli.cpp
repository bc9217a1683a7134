#include "groupdesign/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "groupdesign/criteria.hpp"
#include "groupdesign/design.hpp"
#include "groupdesign/design_io.hpp"
#include "groupdesign/errors.hpp"
#include "groupdesign/interval_design.hpp"
#include "groupdesign/model.hpp"
#include "groupdesign/rounding.hpp"

namespace groupdesign::cli {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

std::vector<std::size_t> split_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (int v : split_ints(s)) {
    if (v < 0) throw DomainError("selection levels must be nonnegative");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string format_sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string format_param(double p) {
  if (std::isinf(p) && p < 0) return "-inf";
  return format_sig12(p);
}

}  // namespace

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // trim
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    tok = tok.substr(b, e - b + 1);
    if (tok == "-inf") {
      values.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    const auto dots = tok.find("..");
    if (dots != std::string::npos) {
      const double lo = std::stod(tok.substr(0, dots));
      std::string rest = tok.substr(dots + 2);
      double hi, step = 1.0;
      const auto sp = rest.find("step");
      if (sp != std::string::npos) {
        hi = std::stod(rest.substr(0, sp));
        step = std::stod(rest.substr(sp + 4));
      } else {
        hi = std::stod(rest);
      }
      if (step <= 0) throw DomainError("sweep step must be positive");
      for (double x = lo; x <= hi + 1e-12; x += step) values.push_back(x);
      continue;
    }
    values.push_back(std::stod(tok));
  }
  if (values.empty()) throw DomainError("empty sweep: " + text);
  return values;
}

std::vector<std::string> RunConfig::canonical_args() const {
  std::vector<std::string> a;
  a.push_back(command);
  auto flag = [&a](const std::string& name, const std::string& value) {
    a.push_back(name);
    a.push_back(value);
  };
  if (!manifold.empty()) flag("--manifold", manifold);
  if (!trunc.empty()) flag("--trunc", join_ints(trunc));
  if (!construct.empty()) flag("--construct", construct);
  if (!counts.empty()) flag("--counts", join_ints(counts));
  if (n != 0) flag("--n", std::to_string(n));
  if (n1 != 0) flag("--n1", std::to_string(n1));
  if (n2 != 0) flag("--n2", std::to_string(n2));
  if (t != 0) flag("--t", std::to_string(t));
  if (circle_points != 3) flag("--circle-points", std::to_string(circle_points));
  if (dim != 4) flag("--dim", std::to_string(dim));
  if (count != 0) flag("--count", std::to_string(count));
  if (!input.empty()) flag("--input", input);
  if (!factor_a.empty()) flag("--a", factor_a);
  if (!factor_b.empty()) flag("--b", factor_b);
  if (!output.empty()) flag("--output", output);
  if (!format.empty()) flag("--format", format);
  if (beta_convention != "cosEndpoints") flag("--beta-convention", beta_convention);
  if (!theta_convention.empty()) flag("--theta-convention", theta_convention);
  if (dedup_tol != 1e-8) flag("--dedup-tol", format_sig12(dedup_tol));
  if (!max_level.empty()) flag("--max-level", join_ints(max_level));
  if (!select.empty()) flag("--select", join_sizes(select));
  if (!p_sweep.empty()) flag("--p", p_sweep);
  if (!es_sweep.empty()) flag("--es", es_sweep);
  if (ref != "haar") flag("--ref", ref);
  if (seed != 0) flag("--seed", std::to_string(seed));
  return a;
}

namespace {

void add_common_options(CLI::App* sub, RunConfig& cfg, std::string& trunc_str,
                        std::string& counts_str, std::string& max_level_str,
                        std::string& select_str) {
  sub->add_option("--manifold", cfg.manifold, "circle | torus<d> | s2 | s3 | so3 | s2xso3");
  sub->add_option("--trunc", trunc_str, "truncation levels, comma separated");
  sub->add_option("--construct", cfg.construct,
                  "circle | torus-grid | mimura | bajnok | euler-grid | sphere2-grid | product | "
                  "project | haar | file");
  sub->add_option("--counts", counts_str, "grid counts, comma separated");
  sub->add_option("--n", cfg.n, "point count / sample size");
  sub->add_option("--n1", cfg.n1, "first interval design size");
  sub->add_option("--n2", cfg.n2, "second interval design size");
  sub->add_option("--t", cfg.t, "interval design strength");
  sub->add_option("--circle-points", cfg.circle_points, "circle factor size");
  sub->add_option("--dim", cfg.dim, "point file columns (3 or 4)");
  sub->add_option("--count", cfg.count, "sample count");
  sub->add_option("--input", cfg.input, "input design/point file");
  sub->add_option("--a", cfg.factor_a, "first product factor file (S2)");
  sub->add_option("--b", cfg.factor_b, "second product factor file (SO3)");
  sub->add_option("--output", cfg.output, "output file");
  sub->add_option("--format", cfg.format, "text | json | csv");
  sub->add_option("--beta-convention", cfg.beta_convention,
                  "endpoints | midpoint | leftOpen | cosEndpoints");
  sub->add_option("--theta-convention", cfg.theta_convention,
                  "colatitude convention for S2 grids (defaults to --beta-convention)");
  sub->add_option("--dedup-tol", cfg.dedup_tol, "projection merge tolerance");
  sub->add_option("--max-level", max_level_str, "verification truncation, comma separated");
  sub->add_option("--select", select_str, "selected level indices, comma separated");
  sub->add_option("--p", cfg.p_sweep, "p values, e.g. '-2..0.95 step 0.05,-inf'");
  sub->add_option("--es", cfg.es_sweep, "E_s values, e.g. '1..10 step 1'");
  sub->add_option("--ref", cfg.ref, "reference design: haar or a file");
  sub->add_option("--seed", cfg.seed, "random seed");
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  // A JSON config file may replace the flag list entirely.
  if (args.size() >= 2 && args[0] == "--config") {
    std::ifstream in(args[1]);
    if (!in) throw IoError("cannot open config file: " + args[1]);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("config JSON: ") + e.what());
    }
    std::vector<std::string> expanded;
    expanded.push_back(j.at("command").get<std::string>());
    if (j.contains("args")) {
      for (const auto& [key, value] : j.at("args").items()) {
        expanded.push_back("--" + key);
        if (value.is_string())
          expanded.push_back(value.get<std::string>());
        else
          expanded.push_back(value.dump());
      }
    }
    return parse_args(expanded);
  }

  RunConfig cfg;
  std::string trunc_str, counts_str, max_level_str, select_str;

  CLI::App app{"exact optimal designs for regression on compact groups"};
  app.require_subcommand(1);
  for (const char* name : {"build", "verify", "criteria", "round"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common_options(sub, cfg, trunc_str, counts_str, max_level_str, select_str);
    sub->parse_complete_callback([&cfg, name] { cfg.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);

  if (!trunc_str.empty()) cfg.trunc = split_ints(trunc_str);
  if (!counts_str.empty()) cfg.counts = split_ints(counts_str);
  if (!max_level_str.empty()) cfg.max_level = split_ints(max_level_str);
  if (!select_str.empty()) cfg.select = split_sizes(select_str);
  return cfg;
}

namespace {

ManifoldId manifold_of(const RunConfig& cfg) {
  if (cfg.manifold.empty()) throw DomainError("--manifold is required here");
  return manifold_from_string(cfg.manifold);
}

Design load_input_design(const std::string& path, const RunConfig& cfg) {
  if (path.empty()) throw DomainError("--input is required here");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return load_json(path);
  return load_text(path, manifold_of(cfg));
}

Design build_design(const RunConfig& cfg, std::ostream& err) {
  const std::string& c = cfg.construct;
  if (c == "circle") {
    if (cfg.n < 1) throw DomainError("circle: --n is required");
    return circle_design(cfg.n);
  }
  if (c == "torus-grid") {
    return torus_grid(cfg.counts);
  }
  if (c == "mimura") {
    return mimura_tight_2design();
  }
  if (c == "bajnok") {
    const int t = cfg.t > 0 ? cfg.t : 2;
    const int n1 = cfg.n1 > 0 ? cfg.n1 : 2;
    const int n2 = cfg.n2 > 0 ? cfg.n2 : 2;
    const IntervalDesign c1 = interval_t_design(1, t, n1, cfg.seed);
    const IntervalDesign c2 = interval_t_design(2, t, n2, cfg.seed + 1);
    return bajnok_s3_design(c1, c2, cfg.circle_points);
  }
  if (c == "euler-grid") {
    if (cfg.counts.size() != 3) throw DomainError("euler-grid: --counts a,b,c required");
    return euler_grid(cfg.counts[0], cfg.counts[1], cfg.counts[2],
                      angle_convention_from_string(cfg.beta_convention));
  }
  if (c == "sphere2-grid") {
    if (cfg.counts.size() != 2) throw DomainError("sphere2-grid: --counts a,b required");
    const std::string conv =
        cfg.theta_convention.empty() ? cfg.beta_convention : cfg.theta_convention;
    return sphere2_grid(cfg.counts[0], cfg.counts[1], angle_convention_from_string(conv));
  }
  if (c == "product") {
    if (cfg.factor_a.empty() || cfg.factor_b.empty())
      throw DomainError("product: --a <s2 design> and --b <so3 design> required");
    const Design a = load_design(cfg.factor_a, {Manifold::Sphere2, 1});
    const Design b = load_design(cfg.factor_b, {Manifold::SO3, 1});
    return product_design(a, b);
  }
  if (c == "project") {
    if (cfg.input.empty()) throw DomainError("project: --input <s3 points> required");
    Design s3 = (cfg.input.size() >= 5 && cfg.input.substr(cfg.input.size() - 5) == ".json")
                    ? load_json(cfg.input)
                    : load_point_file(cfg.input, 4);
    return project_su2_to_so3(s3, cfg.dedup_tol);
  }
  if (c == "haar") {
    if (cfg.count < 1) throw DomainError("haar: --count required");
    return haar_sample(manifold_of(cfg), static_cast<std::size_t>(cfg.count), cfg.seed);
  }
  if (c == "file") {
    if (cfg.input.empty()) throw DomainError("file: --input required");
    if (cfg.input.size() >= 5 && cfg.input.substr(cfg.input.size() - 5) == ".json")
      return load_json(cfg.input);
    if (cfg.dim == 3 || cfg.dim == 4) {
      if (!cfg.manifold.empty()) return load_text(cfg.input, manifold_of(cfg));
      return load_point_file(cfg.input, cfg.dim);
    }
    return load_text(cfg.input, manifold_of(cfg));
  }
  err << "unknown constructor: " << c << "\n";
  throw DomainError("unknown constructor: " + c);
}

void write_design(const Design& d, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) throw DomainError("--output is required");
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  if (fmt == "text") {
    if (!d.has_equal_weights(1e-12))
      throw DomainError("text format carries equal weights only; use --format json");
    save_text(d, cfg.output);
  } else if (fmt == "json") {
    save_json(d, cfg.output);
  } else {
    throw DomainError("unknown design format: " + fmt);
  }
  out << to_string(d.manifold()) << " " << d.size() << " points -> " << cfg.output << "\n";
}

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Design d = build_design(cfg, err);
  write_design(d, cfg, out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Design d = load_input_design(cfg.input, cfg);
  if (cfg.max_level.empty()) throw DomainError("verify: --max-level required");
  const Model model = Model::make(d.manifold(), cfg.max_level);
  const LambdaReport rep = verify_lambda(d, model);
  for (std::size_t lv = 0; lv < rep.per_level.size(); ++lv)
    out << "level " << (lv + 1) << " residual " << format_sig12(rep.per_level[lv]) << "\n";
  out << (rep.passed ? "PASS" : "FAIL") << " max residual " << format_sig12(rep.max_residual)
      << "\n";
  return rep.passed ? kExitOk : kExitDomain;
}

int cmd_criteria(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.trunc.empty()) throw DomainError("criteria: --trunc required");
  const ManifoldId manifold = manifold_of(cfg);
  const Model model = Model::make(manifold, cfg.trunc);
  const Design d = cfg.input.empty() ? build_design(cfg, out) : load_input_design(cfg.input, cfg);
  const SelectionSet sel =
      cfg.select.empty() ? SelectionSet::full(model) : SelectionSet(model, cfg.select);

  const bool ideal_ref = (cfg.ref == "haar");
  ComplexMatrix mref;
  if (!ideal_ref) {
    RunConfig refcfg = cfg;
    refcfg.input = cfg.ref;
    mref = information_matrix(load_input_design(cfg.ref, refcfg), model);
  }
  const ComplexMatrix md = information_matrix(d, model);

  std::ostringstream csv;
  csv << "criterion,param,value,reference_value,efficiency,feasible\n";

  if (!cfg.p_sweep.empty()) {
    // one eigensystem per design, shared across the whole sweep
    std::vector<double> ref_spectrum;
    if (!ideal_ref) ref_spectrum = c_spectrum(mref, sel);
    std::vector<double> spectrum;
    bool feasible = true;
    try {
      spectrum = c_spectrum(md, sel);
    } catch (const InfeasibleError&) {
      feasible = false;
    }
    for (double p : parse_sweep(cfg.p_sweep)) {
      if (p >= 1.0) continue;  // sweeps like "-2..1" mean -2 <= p < 1
      const double ref_value = ideal_ref ? phi_p_ideal(sel.size(), p)
                                         : trace_power_from_eigenvalues(ref_spectrum, p);
      const double value = feasible ? trace_power_from_eigenvalues(spectrum, p) : 0.0;
      const double eff = feasible ? value / ref_value : 0.0;
      csv << "phi_p," << format_param(p) << ',' << format_sig12(value) << ','
          << format_sig12(ref_value) << ',' << format_sig12(eff) << ',' << (feasible ? 1 : 0)
          << "\n";
    }
  }
  if (!cfg.es_sweep.empty()) {
    for (double sf : parse_sweep(cfg.es_sweep)) {
      const std::size_t s = static_cast<std::size_t>(std::llround(sf));
      const double ref_value =
          ideal_ref ? static_cast<double>(s) : phi_es_from_info(mref, s);
      const double value = phi_es_from_info(md, s);
      csv << "phi_Es," << format_sig12(static_cast<double>(s)) << ',' << format_sig12(value)
          << ',' << format_sig12(ref_value) << ',' << format_sig12(value / ref_value) << ",1\n";
    }
  }

  if (cfg.output.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw IoError("cannot write file: " + cfg.output);
    f << csv.str();
    out << "wrote " << cfg.output << "\n";
  }
  return kExitOk;
}

int cmd_round(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Design d = load_input_design(cfg.input, cfg);
  if (cfg.n < 1) throw DomainError("round: --n required");
  const Apportionment ap = efficient_round(d.weights(), cfg.n);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Coord& p = d.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) out << format_sig12(p[k]) << ' ';
    out << ap.counts[i] << "\n";
  }
  if (!cfg.output.empty()) {
    const Design exact = round_design(d, cfg.n);
    save_json(exact, cfg.output);
    out << "wrote " << cfg.output << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse_args(args);
    if (cfg.command == "build") return cmd_build(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "criteria") return cmd_criteria(cfg, out, err);
    if (cfg.command == "round") return cmd_round(cfg, out, err);
    err << "unknown command\n";
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << "usage: design <build|verify|criteria|round> [flags]\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const groupdesign::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace groupdesign::cli
