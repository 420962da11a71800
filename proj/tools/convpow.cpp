// convpow: analyze stencils, expand convolution powers, run verification suites.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convpow/catalog.hpp"
#include "convpow/error.hpp"
#include "convpow/expansion.hpp"
#include "convpow/io.hpp"
#include "convpow/kernels.hpp"
#include "convpow/symbol_analysis.hpp"
#include "convpow/verify.hpp"

namespace {

using convpow::io::json;

constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_assumption = 2;
constexpr int exit_verify = 3;

struct SchemeFlags {
  std::string scheme = "o3";
  std::optional<double> lambda;
  std::optional<double> p;
  std::string file;

  void attach(CLI::App* app) {
    app->add_option("--scheme", scheme, "o3 | bernoulli | symmetric-walk | lax-friedrichs | file")
        ->check(CLI::IsMember({"o3", "bernoulli", "symmetric-walk", "lax-friedrichs", "file"}));
    app->add_option("--lambda", lambda, "Courant number for o3 / lax-friedrichs (default 0.5)");
    app->add_option("--p", p, "success probability for bernoulli (default 0.5)");
    app->add_option("--file", file, "sequence JSON for --scheme file");
  }

  convpow::Sequence resolve() const {
    convpow::catalog::SchemeSpec spec;
    spec.name = scheme;
    if (lambda) {
      spec.params["lambda"] = *lambda;
    }
    if (p) {
      spec.params["p"] = *p;
    }
    spec.file = file;
    return convpow::catalog::resolve(spec);
  }
};

void emit_error(const json& diag) { std::cerr << diag.dump() << '\n'; }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw convpow::InvalidArgument("cannot write '" + path + "'");
  }
  return out;
}

int run_analyze(const SchemeFlags& flags, int order, bool normalize) {
  convpow::AnalysisOptions opts;
  opts.normalize = normalize;
  const auto analysis = convpow::analyze(flags.resolve(), order, opts);
  const auto plan = convpow::make_plan(analysis, order);
  json out = convpow::io::to_json(plan.report, &plan.polynomials);
  out["order"] = order;
  out["applied_scale"] = analysis.applied_scale;
  out["sequence"] = convpow::io::to_json(analysis.sequence);
  std::cout << out.dump() << '\n';
  return exit_ok;
}

struct ExpandFlags {
  int order = 3;
  std::int64_t n = 1000;
  std::string prefix = "convpow";
  double C = 0.09;
  double c = 0.225;
  bool sweep = false;
  double attractor_step = 0.0;
  bool normalize = false;
};

int run_expand(const SchemeFlags& flags, const ExpandFlags& ex) {
  if (ex.n < 1) {
    throw convpow::InvalidArgument("-n must be a positive integer");
  }
  convpow::AnalysisOptions opts;
  opts.normalize = ex.normalize;
  const convpow::Approximator approx(convpow::make_plan(flags.resolve(), ex.order, opts));

  json summary;
  summary["order"] = ex.order;
  summary["n"] = ex.n;
  summary["report"] = convpow::io::to_json(approx.plan().report);

  convpow::PowerSweep powers(approx.plan().sequence);
  const auto result = convpow::remainder(approx, powers.advance_to(ex.n), ex.n);
  const std::string profile_path = ex.prefix + "_profile.csv";
  {
    auto out = open_out(profile_path);
    convpow::io::write_profile_csv(
        out, result, approx.log_envelope(ex.n, result.lo, result.hi(), ex.C, ex.c));
  }
  summary["linf"] = result.linf;
  summary["l1"] = result.l1;
  summary["support"] = {result.lo, result.hi()};
  summary["envelope"] = convpow::io::to_json(convpow::check_envelope(approx, {ex.n}, ex.C, ex.c));
  summary["files"] = {{"profile", profile_path}};

  if (ex.sweep) {
    const auto ns = convpow::default_n_list();
    std::vector<double> linf;
    std::vector<double> l1;
    convpow::for_each_remainder(approx, ns, [&](const convpow::ExpansionResult& r) {
      linf.push_back(r.linf);
      l1.push_back(r.l1);
    });
    const std::string slopes_path = ex.prefix + "_slopes.csv";
    auto out = open_out(slopes_path);
    convpow::io::write_slopes_csv(out, ns, linf, l1);
    summary["fit"] = {{"linf", convpow::io::to_json(convpow::fit_loglog(ns, linf))},
                      {"l1", convpow::io::to_json(convpow::fit_loglog(ns, l1))}};
    summary["files"]["slopes"] = slopes_path;
  }

  if (ex.attractor_step > 0.0) {
    const auto& bank = approx.bank(0);
    const std::string path = ex.prefix + "_attractor.csv";
    auto out = open_out(path);
    out << "x,re,im\n";
    const auto steps = static_cast<std::int64_t>(bank.x_max() / ex.attractor_step);
    for (std::int64_t i = -steps; i <= steps; ++i) {
      const double x = ex.attractor_step * static_cast<double>(i);
      const auto h = bank.evaluate(x, 0);
      out << convpow::io::format_double(x) << ',' << convpow::io::format_double(h.real()) << ','
          << convpow::io::format_double(h.imag()) << '\n';
    }
    summary["files"]["attractor"] = path;
  }

  std::cout << summary.dump() << '\n';
  return exit_ok;
}

int run_verify(const std::string& suite) {
  std::vector<std::string> names = suite == "all" ? convpow::verify::suite_names()
                                                  : std::vector<std::string>{suite};
  json verdicts = json::array();
  bool ok = true;
  for (const auto& name : names) {
    const auto v = convpow::verify::run(name);
    ok = ok && v.pass();
    verdicts.push_back(v.to_json());
  }
  std::cout << json{{"pass", ok}, {"suites", verdicts}}.dump() << '\n';
  return ok ? exit_ok : exit_verify;
}

int run_convolve(const std::vector<std::string>& files, std::optional<std::int64_t> pw) {
  if (files.empty() || files.size() > 2) {
    throw convpow::InvalidArgument("convolve takes one or two --file arguments");
  }
  if (files.size() == 2 && pw) {
    throw convpow::InvalidArgument("--power applies to a single --file");
  }
  if (files.size() == 1 && !pw) {
    throw convpow::InvalidArgument("convolve with one --file needs --power");
  }
  const auto a = convpow::catalog::from_file(files[0]);
  const auto out = files.size() == 2 ? convpow::convolve(a, convpow::catalog::from_file(files[1]))
                                     : convpow::power(a, *pw);
  std::cout << convpow::io::to_json(out).dump() << '\n';
  return exit_ok;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("CONVPOW_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) {
        convpow::kernels::set_max_threads(n);
      }
    } catch (const std::exception&) {
      // unparsable value: keep the OpenMP default
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Convolution powers and their local limit expansion"};
  app.require_subcommand(1);

  SchemeFlags analyze_scheme;
  int analyze_order = 3;
  bool analyze_normalize = false;
  auto* analyze = app.add_subcommand("analyze", "symbol analysis and tangency classification");
  analyze_scheme.attach(analyze);
  analyze->add_option("--order,-M", analyze_order, "expansion order M")->check(CLI::NonNegativeNumber);
  analyze->add_flag("--normalize", analyze_normalize, "rescale so that sup |F| = 1");

  SchemeFlags expand_scheme;
  ExpandFlags ex;
  auto* expand = app.add_subcommand("expand", "order-M approximation and remainder of a^{*n}");
  expand_scheme.attach(expand);
  expand->add_option("-M,--order", ex.order, "expansion order")->check(CLI::NonNegativeNumber);
  expand->add_option("-n", ex.n, "power n >= 1");
  expand->add_option("--out", ex.prefix, "output file prefix");
  expand->add_option("--C", ex.C, "envelope amplitude");
  expand->add_option("--c", ex.c, "envelope rate");
  expand->add_flag("--sweep", ex.sweep, "also fit remainder slopes over 40 log-spaced n in [1, 1000]");
  expand->add_option("--attractor-step", ex.attractor_step,
                     "write <prefix>_attractor.csv sampled with this step");
  expand->add_flag("--normalize", ex.normalize, "rescale so that sup |F| = 1");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run built-in verification suites");
  std::vector<std::string> suites = convpow::verify::suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite, "suite name or 'all'")->check(CLI::IsMember(suites));

  std::vector<std::string> conv_files;
  std::optional<std::int64_t> conv_power;
  auto* conv = app.add_subcommand("convolve", "convolve two sequence files or power one");
  conv->add_option("--file", conv_files, "sequence JSON file (repeatable)");
  conv->add_option("--power", conv_power, "convolution power n >= 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error({{"error", "UsageError"}, {"message", e.what()}});
    return exit_internal;
  }

  try {
    if (analyze->parsed()) {
      return run_analyze(analyze_scheme, analyze_order, analyze_normalize);
    }
    if (expand->parsed()) {
      return run_expand(expand_scheme, ex);
    }
    if (verify->parsed()) {
      return run_verify(suite);
    }
    return run_convolve(conv_files, conv_power);
  } catch (const convpow::NotNormalized& e) {
    emit_error({{"error", e.name()},
                {"message", e.what()},
                {"sup_modulus", e.sup_modulus()},
                {"factor", e.factor()}});
    return exit_assumption;
  } catch (const convpow::AllModulusOne& e) {
    emit_error({{"error", e.name()},
                {"message", e.what()},
                {"alternative", convpow::to_string(convpow::Alternative::all_modulus_one)}});
    return exit_assumption;
  } catch (const convpow::Error& e) {
    emit_error({{"error", e.name()}, {"message", e.what()}});
    return e.category() == convpow::ErrorCategory::assumption ? exit_assumption : exit_internal;
  } catch (const std::exception& e) {
    emit_error({{"error", "InternalError"}, {"message", e.what()}});
    return exit_internal;
  }
}
