// Command-line front end; links only the shared C interface.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "w2n/w2n_c.h"

namespace {

w2n_format format_of(const std::string& s) {
  if (s == "text") return W2N_FORMAT_TEXT;
  if (s == "latex") return W2N_FORMAT_LATEX;
  if (s == "json") return W2N_FORMAT_JSON;
  throw CLI::ValidationError("--format", "expected text, latex or json");
}

int print_error(const char* what) {
  std::cerr << "error: " << what << " (" << w2n_last_error() << ")\n";
  return 1;
}

struct StringOut {
  char* s = nullptr;
  ~StringOut() { w2n_string_free(s); }
};

int emit_field(w2n_field* f, w2n_format fmt) {
  StringOut out;
  if (w2n_field_render(f, fmt, &out.s) != W2N_OK) return print_error("render failed");
  std::cout << out.s << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact OPE engine and verification suites for the two-current W algebras"};
  app.fallthrough();
  app.set_config("--config", "", "INI configuration file (keys: n_max, depth, fock_cutoff, jobs, output_format)");

  std::string output_format = "text";
  app.add_option("--output-format,--output_format", output_format, "default output format")
      ->check(CLI::IsMember({"text", "latex", "json"}));

  // ---- build -----------------------------------------------------------
  auto* build = app.add_subcommand("build", "construct the generators of a realization");
  int b_n = 3, b_m = 0;
  bool b_factored = false, b_recursive = false;
  std::string b_format;
  build->add_option("--n", b_n, "rank")->required();
  build->add_option("--m", b_m, "realization index")->required();
  build->add_flag("--factored", b_factored, "use the factored construction");
  build->add_flag("--recursive", b_recursive, "use the recursion (default)");
  build->add_option("--format", b_format, "text, latex or json");

  // ---- ope --------------------------------------------------------------
  auto* opec = app.add_subcommand("ope", "expand the product of two field expressions");
  std::string o_left, o_right, o_format;
  int o_depth = 2, o_n = -1, o_m = -1;
  opec->add_option("--left", o_left, "left field expression")->required();
  opec->add_option("--right", o_right, "right field expression")->required();
  opec->add_option("--depth", o_depth, "regular orders to keep");
  opec->add_option("--n", o_n, "realization rank (optional if the expressions carry it)");
  opec->add_option("--m", o_m, "realization index");
  opec->add_option("--format", o_format, "text, latex or json");

  // ---- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string v_suite = "all", v_format, v_k;
  int v_nmax = 4, v_depth = 2, v_cutoff = 4, v_jobs = 1;
  verify->add_option("--suite", v_suite,
                     "structure, screenings, appendix-bp, appendix-w4, duality, oracle or all");
  verify->add_option("--n-max,--n_max", v_nmax, "largest rank exercised");
  verify->add_option("--depth", v_depth, "expansion depth");
  verify->add_option("--fock-cutoff,--fock_cutoff", v_cutoff, "oracle level cutoff");
  verify->add_option("--jobs", v_jobs, "parallel workers");
  verify->add_option("--k", v_k, "additionally verify at this numeric level, e.g. 1/2");
  verify->add_option("--format", v_format, "text, latex or json");

  // ---- report -------------------------------------------------------------
  auto* reportc = app.add_subcommand("report", "re-render a stored JSON report");
  std::string r_input = "-", r_format;
  reportc->add_option("--input", r_input, "report file (default: standard input)");
  reportc->add_option("--format", r_format, "text, latex or json");

  // ---- specialize -----------------------------------------------------------
  auto* spec = app.add_subcommand("specialize", "substitute a numeric level into an expression");
  std::string s_k, s_expr, s_format;
  int s_n = -1, s_m = -1;
  spec->add_option("--k", s_k, "rational value, e.g. -1/2")->required();
  spec->add_option("--expr", s_expr, "field expression")->required();
  spec->add_option("--n", s_n, "realization rank");
  spec->add_option("--m", s_m, "realization index");
  spec->add_option("--format", s_format, "text, latex or json");

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto pick_format = [&](const std::string& local) {
    return format_of(local.empty() ? output_format : local);
  };

  if (*build) {
    w2n_realization* rd = nullptr;
    if (w2n_realization_new(b_n, b_m, &rd) != W2N_OK) return print_error("bad realization");
    int mode = b_factored && !b_recursive ? 1 : 0;
    for (const char* name : {"E", "H", "F", "T"}) {
      w2n_field* f = nullptr;
      if (w2n_generator(rd, name, mode, &f) != W2N_OK) {
        w2n_realization_free(rd);
        return print_error("generator construction failed");
      }
      std::cout << name << " = ";
      int rc = emit_field(f, pick_format(b_format));
      w2n_field_free(f);
      if (rc) {
        w2n_realization_free(rd);
        return rc;
      }
    }
    w2n_realization_free(rd);
    return 0;
  }

  if (*opec) {
    w2n_field *l = nullptr, *r = nullptr;
    if (w2n_field_parse(o_left.c_str(), o_n, o_m, &l) != W2N_OK)
      return print_error("cannot parse --left");
    if (w2n_field_parse(o_right.c_str(), o_n, o_m, &r) != W2N_OK) {
      w2n_field_free(l);
      return print_error("cannot parse --right");
    }
    w2n_expansion* o = nullptr;
    w2n_status st = w2n_ope(l, r, o_depth, &o);
    w2n_field_free(l);
    w2n_field_free(r);
    if (st != W2N_OK) return print_error("expansion failed");
    StringOut out;
    if (w2n_expansion_render(o, pick_format(o_format), &out.s) != W2N_OK) {
      w2n_expansion_free(o);
      return print_error("render failed");
    }
    std::cout << out.s << "\n";
    w2n_expansion_free(o);
    return 0;
  }

  if (*verify) {
    w2n_suite_options opt;
    w2n_suite_options_init(&opt);
    opt.n_max = v_nmax;
    opt.depth = v_depth;
    opt.fock_cutoff = v_cutoff;
    opt.jobs = v_jobs;
    if (const char* env = std::getenv("W2N_JOBS")) opt.jobs = std::atoi(env);
    if (!v_k.empty()) opt.k_value = v_k.c_str();
    w2n_report* rep = nullptr;
    if (w2n_run_suite(v_suite.c_str(), &opt, &rep) != W2N_OK) return print_error("suite failed to run");
    StringOut out;
    if (w2n_report_render(rep, pick_format(v_format), &out.s) != W2N_OK) {
      w2n_report_free(rep);
      return print_error("render failed");
    }
    std::cout << out.s;
    int failed = w2n_report_failed(rep);
    w2n_report_free(rep);
    return failed == 0 ? 0 : 1;
  }

  if (*reportc) {
    std::string text;
    if (r_input == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else {
      std::ifstream in(r_input);
      if (!in) {
        std::cerr << "error: cannot open " << r_input << "\n";
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    w2n_report* rep = nullptr;
    if (w2n_report_parse(text.c_str(), &rep) != W2N_OK) return print_error("cannot parse report");
    StringOut out;
    if (w2n_report_render(rep, pick_format(r_format), &out.s) != W2N_OK) {
      w2n_report_free(rep);
      return print_error("render failed");
    }
    std::cout << out.s;
    int failed = w2n_report_failed(rep);
    w2n_report_free(rep);
    return failed == 0 ? 0 : 1;
  }

  if (*spec) {
    w2n_field* f = nullptr;
    if (w2n_field_parse(s_expr.c_str(), s_n, s_m, &f) != W2N_OK)
      return print_error("cannot parse --expr");
    w2n_field* g = nullptr;
    w2n_status st = w2n_field_specialize(f, s_k.c_str(), &g);
    w2n_field_free(f);
    if (st != W2N_OK) return print_error("specialization failed");
    int rc = emit_field(g, pick_format(s_format));
    w2n_field_free(g);
    return rc;
  }
  return 2;
}
