// nahm: boundary expansions of Nahm pole solutions on homogeneous backgrounds.

#include "nahm/io.hpp"
#include "nahm/oracle.hpp"
#include "nahm/series.hpp"
#include "nahm/verify.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace nahm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMath = 2;
constexpr int kExitVerify = 3;

struct Options {
  std::string background = "builtin:flat";
  int order = 6;
  std::vector<int> orders;
  std::string free_data;
  std::string scalar = "rational";
  unsigned prec = 256;
  std::string format;
  std::string out;
  double tol = 1e-10;
  double y_min = 0.01;
  double y_max = 0.1;
  int points = 12;
  std::string suite;
  bool order_given = false;
};

bool use_color() {
  const char* env = std::getenv("NAHM_COLOR");
  if (env && std::string(env) == "0") return false;
  return isatty(STDOUT_FILENO) != 0;
}

std::string paint(const std::string& text, const char* code, bool color) {
  return color ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::invalid_argument("cannot write '" + o.out + "'");
  f << text;
}

/// Splits a 1-form into its e-multiple, the 0-form v with x^0 = [e, v], and the V^+ remainder.
template <class S>
std::string pretty_form1(const Form1<S>& x) {
  using T = ScalarTraits<S>;
  std::vector<std::string> parts;
  const S lambda = x.trace() / S(3);
  if (!T::is_zero(lambda)) parts.push_back(T::to_string(lambda) + " e");
  const auto v = gamma_op(x) / S(2);
  if (!is_zero(v)) parts.push_back("[e, (" + T::to_string(v[0]) + ", " + T::to_string(v[1]) + ", " + T::to_string(v[2]) + ")]");
  const auto plus = project(x, EigenPart::Plus);
  if (!is_zero(plus)) {
    std::string m = "V+[";
    for (int a = 0; a < 3; ++a) {
      m += a ? "; " : "";
      for (int i = 0; i < 3; ++i) m += (i ? " " : "") + T::to_string(plus(a, i));
    }
    parts.push_back(m + "]");
  }
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t n = 1; n < parts.size(); ++n) s += " + " + parts[n];
  return s;
}

std::string monomial_text(int k, int p) {
  std::string s = "y^" + std::to_string(k);
  if (p == 1) s += " log y";
  if (p > 1) s += " (log y)^" + std::to_string(p);
  return s;
}

template <class S>
Json summary_json(const PhgSeries<S>& s) {
  Json j;
  j["log_free"] = is_log_free(s);
  j["einstein"] = is_einstein(s.background);
  Json viol = Json::array();
  for (const auto& v : parity_report(s)) viol.push_back(Json{{"k", v.k}, {"p", v.p}, {"field", v.field}});
  j["parity_violations"] = viol;
  j["global"] = to_json(global_report(s));
  return j;
}

template <class S>
std::string render_series(const PhgSeries<S>& s, const std::string& format) {
  const Json summary = summary_json(s);
  if (format == "json") return dump_json(to_json(make_document(s, summary)));
  std::ostringstream os;
  if (format == "csv") {
    os << "k,p,field,row,col,value\n";
    for (const auto& [m, c] : s.entries) {
      for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) os << m.first << "," << m.second << ",a," << a + 1 << "," << i + 1 << "," << ScalarTraits<S>::to_string(c.a(a, i)) << "\n";
      for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) os << m.first << "," << m.second << ",b," << a + 1 << "," << i + 1 << "," << ScalarTraits<S>::to_string(c.b(a, i)) << "\n";
      for (int a = 0; a < 3; ++a) os << m.first << "," << m.second << ",phi_y," << a + 1 << ",," << ScalarTraits<S>::to_string(c.phi_y[a]) << "\n";
    }
    return os.str();
  }
  os << "background " << s.background.name << " through y^" << s.order << " (" << scalar_tag<S>() << ")\n";
  os << "A   = omega";
  for (const auto& [m, c] : s.entries)
    if (!is_zero(c.a)) os << "\n    + (" << pretty_form1(c.a) << ") " << monomial_text(m.first, m.second);
  os << "\nPhi = e / y";
  for (const auto& [m, c] : s.entries)
    if (!is_zero(c.b)) os << "\n    + (" << pretty_form1(c.b) << ") " << monomial_text(m.first, m.second);
  os << "\nphi_y =";
  bool any = false;
  for (const auto& [m, c] : s.entries) {
    if (is_zero(c.phi_y)) continue;
    const auto& v = c.phi_y;
    os << (any ? "\n    + " : " ") << "(" << ScalarTraits<S>::to_string(v[0]) << ", " << ScalarTraits<S>::to_string(v[1]) << ", "
       << ScalarTraits<S>::to_string(v[2]) << ") " << monomial_text(m.first, m.second);
    any = true;
  }
  if (!any) os << " 0";
  os << "\nlog_free=" << (summary["log_free"].get<bool>() ? "true" : "false")
     << " einstein=" << (summary["einstein"].get<bool>() ? "true" : "false")
     << " parity_violations=" << summary["parity_violations"].size() << "\n";
  return os.str();
}

int cmd_expand(const Options& o) {
  if (o.order < 2) throw std::invalid_argument("--order must be at least 2");
  const auto bg = load_background(o.background);
  const FreeData<Rational> free = o.free_data.empty() ? FreeData<Rational>{} : load_free_data(o.free_data);
  const std::string format = o.format.empty() ? "json" : o.format;
  if (o.scalar == "rational") {
    emit(o, render_series(expand(bg, free, o.order), format));
  } else {
    set_real_precision_bits(o.prec);
    const auto s = expand(background_cast<Real>(bg), free_data_cast<Real>(free), o.order);
    emit(o, render_series(s, format));
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  const auto results = run_verify_suite(o.suite, o.order_given ? o.order : 0);
  const bool color = o.out.empty() && use_color();
  const std::string format = o.format.empty() ? "pretty" : o.format;
  bool all = true;
  std::ostringstream os;
  Json j = Json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    if (format == "json") {
      j.push_back(Json{{"check", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    } else {
      os << (r.pass ? paint("PASS", "32", color) : paint("FAIL", "31", color)) << "  " << r.name;
      if (!r.pass && !r.detail.empty()) os << "\n      " << r.detail;
      os << "\n";
    }
  }
  if (format == "json")
    os << dump_json(Json{{"suite", o.suite}, {"pass", all}, {"checks", j}});
  else
    os << (all ? "all " : "") << results.size() << " checks, " << (all ? "passed" : "FAILURES") << "\n";
  emit(o, os.str());
  return all ? kExitOk : kExitVerify;
}

int cmd_ode_compare(const Options& o) {
  const auto bg = load_background(o.background);
  const auto sol = profile_for_background(bg.name);
  if (!sol) throw std::invalid_argument("no closed-form solution registered for background '" + bg.name + "'");
  set_real_precision_bits(o.prec);
  std::vector<int> orders = o.orders.empty() ? std::vector<int>{2, 4, 6} : o.orders;

  const auto cd = background_cast<double>(sol->background).c;
  IntegratorOptions<double> iopt;
  iopt.tol = o.tol;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "order,max_error,slope,ode_terminal_error\n";
  for (int N : orders) {
    if (N < 2) throw std::invalid_argument("--order must be at least 2");
    const auto row = series_convergence(*sol, N, Real(o.y_min), Real(o.y_max), o.points);
    const auto series = expand(sol->background, sol->matched_free_data, N);
    const auto init = series_state<double>(series, o.y_min, N);
    const auto traj = integrate_flow(cd, init, o.y_max, iopt);
    const double ode_err = state_distance(traj.back(), sol->state(o.y_max));
    std::ostringstream err, slope, ode;
    err << std::setprecision(6) << std::scientific << static_cast<double>(row.max_error);
    if (row.slope) slope << std::setprecision(4) << std::fixed << *row.slope;
    ode << std::setprecision(6) << std::scientific << ode_err;
    csv << N << "," << err.str() << "," << (row.slope ? slope.str() : "") << "," << ode.str() << "\n";
    rows.push_back(Json{{"order", N},
                        {"max_error", err.str()},
                        {"slope", row.slope ? Json(slope.str()) : Json(nullptr)},
                        {"ode_terminal_error", ode.str()}});
  }
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "json")
    emit(o, dump_json(Json{{"background", bg.name}, {"y_min", o.y_min}, {"y_max", o.y_max}, {"rows", rows}}));
  else
    emit(o, csv.str());
  return kExitOk;
}

int cmd_backgrounds(const Options& o) {
  const std::string format = o.format.empty() ? "pretty" : o.format;
  std::ostringstream os;
  Json j = Json::array();
  for (const auto& b : builtin_catalog()) {
    const auto bg = builtin(b.name);
    if (format == "json") {
      j.push_back(Json{{"name", "builtin:" + b.name}, {"params", b.params}, {"description", b.description},
                       {"einstein_at_default", is_einstein(bg)}});
    } else {
      std::string uri = "builtin:" + b.name + (b.params.empty() ? "" : "?" + b.params);
      os << uri << std::string(uri.size() < 28 ? 28 - uri.size() : 1, ' ') << b.description << "\n";
    }
  }
  if (format == "json") os << dump_json(j);
  emit(o, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhomogeneous boundary expansions of Nahm pole solutions (G = SU(2)/SO(3))"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd->add_option("--out", o.out, "Write output to a file");
  };

  auto* expand_cmd = app.add_subcommand("expand", "Compute the boundary expansion through a given order");
  expand_cmd->add_option("--background", o.background, "Builtin URI (builtin:<name>?k=v) or background JSON file");
  expand_cmd->add_option("--order", o.order, "Expansion order N >= 2");
  expand_cmd->add_option("--free-data", o.free_data, "Free-data JSON (eigenspace-tagged matrices)");
  expand_cmd->add_option("--scalar", o.scalar, "Scalar field")->check(CLI::IsMember({"rational", "float"}));
  expand_cmd->add_option("--prec", o.prec, "Float precision in bits (>= 64)");
  add_common(expand_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", o.suite, "Suite name")->required()->check(CLI::IsMember(verify_suite_names()));
  auto* verify_order = verify_cmd->add_option("--order", o.order, "Expansion order used by the suite");
  add_common(verify_cmd);

  auto* ode_cmd = app.add_subcommand("ode-compare", "Truncated series vs closed form and flow integration");
  ode_cmd->add_option("--background", o.background, "Background with a registered closed form");
  ode_cmd->add_option("--order", o.orders, "Truncation orders (repeatable)");
  ode_cmd->add_option("--tol", o.tol, "Integrator tolerance");
  ode_cmd->add_option("--y-min", o.y_min, "Lower end of the y grid");
  ode_cmd->add_option("--y-max", o.y_max, "Upper end of the y grid");
  ode_cmd->add_option("--points", o.points, "Grid points");
  ode_cmd->add_option("--prec", o.prec, "Float precision in bits (>= 64)");
  add_common(ode_cmd);

  auto* bg_cmd = app.add_subcommand("backgrounds", "List builtin backgrounds");
  add_common(bg_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  o.order_given = verify_order->count() > 0;

  try {
    if (*expand_cmd) return cmd_expand(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*ode_cmd) return cmd_ode_compare(o);
    if (*bg_cmd) return cmd_backgrounds(o);
  } catch (const MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return kExitMath;
  } catch (const IntegrationError<double>& e) {
    std::cerr << "integration error: " << e.what() << " (last good y=" << e.last_good.y << ")\n";
    return kExitMath;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return kExitMath;
  }
  return kExitUsage;
}
