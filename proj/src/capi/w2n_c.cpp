#include "w2n/w2n_c.h"

#include <cstring>
#include <string>

#include "w2n/expr.hpp"
#include "w2n/report.hpp"
#include "w2n/suites.hpp"
#include "w2n/wgen.hpp"

using namespace w2n;

struct w2n_realization {
  RootData rd;
};
struct w2n_field {
  RootData rd;
  VertexField f;
};
struct w2n_expansion {
  RootData rd;
  LaurentOPE o;
};
struct w2n_report {
  Report r;
};

namespace {

thread_local std::string g_last_error;

w2n_status status_of(const error& e) {
  switch (e.code()) {
    case errc::invalid_argument: return W2N_ERR_INVALID;
    case errc::division_by_zero: return W2N_ERR_DIVISION;
    case errc::singular_matrix: return W2N_ERR_SINGULAR;
    case errc::nonlocal_product: return W2N_ERR_NONLOCAL;
    case errc::domain: return W2N_ERR_DOMAIN;
    case errc::parse: return W2N_ERR_PARSE;
    case errc::internal: return W2N_ERR_INTERNAL;
  }
  return W2N_ERR_INTERNAL;
}

template <typename Fn>
w2n_status guarded(Fn&& fn) {
  try {
    fn();
    return W2N_OK;
  } catch (const error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return W2N_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool same_realization(const RootData& a, const RootData& b) {
  return a.n() == b.n() && a.m() == b.m();
}

} // namespace

extern "C" {

const char* w2n_version(void) { return "1.0.0"; }

const char* w2n_last_error(void) { return g_last_error.c_str(); }

void w2n_string_free(char* s) { std::free(s); }

w2n_status w2n_realization_new(int n, int m, w2n_realization** out) {
  return guarded([&] { *out = new w2n_realization{RootData::build(n, m)}; });
}

void w2n_realization_free(w2n_realization* rd) { delete rd; }

w2n_status w2n_field_parse(const char* text, int n, int m, w2n_field** out) {
  return guarded([&] {
    if (!text || !out) fail(errc::invalid_argument, "null argument");
    std::optional<std::pair<int, int>> nm;
    if (n >= 0 && m >= 0) nm = {n, m};
    ResolvedField r = resolve_expression(parse_expression(text), nm);
    *out = new w2n_field{std::move(r.rd), std::move(r.field)};
  });
}

w2n_status w2n_generator(const w2n_realization* rd, const char* name, int mode, w2n_field** out) {
  return guarded([&] {
    if (!rd || !name || !out) fail(errc::invalid_argument, "null argument");
    GeneratorSet g = mode == 1 ? generators_factored(rd->rd) : generators_recursive(rd->rd);
    std::string nm = name;
    VertexField f;
    if (nm == "E")
      f = g.E;
    else if (nm == "H")
      f = g.H;
    else if (nm == "F")
      f = g.F;
    else if (nm == "T")
      f = g.T;
    else if (nm == "W")
      f = w3_current(rd->rd, g);
    else if (nm == "Lambda")
      f = w4_lambda(rd->rd, g, w3_current(rd->rd, g));
    else if (nm == "Z") {
      VertexField w = w3_current(rd->rd, g);
      f = w4_z(rd->rd, g, w, w4_lambda(rd->rd, g, w));
    } else
      fail(errc::invalid_argument, "unknown generator '" + nm + "'");
    *out = new w2n_field{rd->rd, std::move(f)};
  });
}

w2n_status w2n_field_derivative(const w2n_field* f, w2n_field** out) {
  return guarded([&] {
    if (!f || !out) fail(errc::invalid_argument, "null argument");
    *out = new w2n_field{f->rd, derivative(f->f, f->rd)};
  });
}

w2n_status w2n_field_normal_product(const w2n_field* a, const w2n_field* b, w2n_field** out) {
  return guarded([&] {
    if (!a || !b || !out) fail(errc::invalid_argument, "null argument");
    if (!same_realization(a->rd, b->rd)) fail(errc::invalid_argument, "fields live in different realizations");
    *out = new w2n_field{a->rd, normal_product(a->f, b->f, a->rd)};
  });
}

w2n_status w2n_field_specialize(const w2n_field* f, const char* k_value, w2n_field** out) {
  return guarded([&] {
    if (!f || !k_value || !out) fail(errc::invalid_argument, "null argument");
    BigRat v = bigrat_parse(k_value);
    *out = new w2n_field{f->rd, specialize_k(f->f, v, f->rd)};
  });
}

w2n_status w2n_field_render(const w2n_field* f, w2n_format format, char** out) {
  return guarded([&] {
    if (!f || !out) fail(errc::invalid_argument, "null argument");
    std::string s;
    switch (format) {
      case W2N_FORMAT_TEXT: s = render_text(f->rd, f->f); break;
      case W2N_FORMAT_LATEX: s = render_latex(f->rd, f->f); break;
      case W2N_FORMAT_JSON: s = render_json(f->rd, f->f); break;
    }
    *out = dup_string(s);
  });
}

int w2n_field_equal(const w2n_field* a, const w2n_field* b) {
  if (!a || !b) return 0;
  return same_realization(a->rd, b->rd) && a->f == b->f ? 1 : 0;
}

void w2n_field_free(w2n_field* f) { delete f; }

w2n_status w2n_ope(const w2n_field* left, const w2n_field* right, int depth, w2n_expansion** out) {
  return guarded([&] {
    if (!left || !right || !out) fail(errc::invalid_argument, "null argument");
    if (!same_realization(left->rd, right->rd))
      fail(errc::invalid_argument, "fields live in different realizations");
    *out = new w2n_expansion{left->rd, ope(left->f, right->f, depth, left->rd)};
  });
}

w2n_status w2n_expansion_render(const w2n_expansion* o, w2n_format format, char** out) {
  return guarded([&] {
    if (!o || !out) fail(errc::invalid_argument, "null argument");
    std::string s;
    switch (format) {
      case W2N_FORMAT_TEXT: s = render_text(o->rd, o->o); break;
      case W2N_FORMAT_LATEX: s = render_latex(o->rd, o->o); break;
      case W2N_FORMAT_JSON: s = render_json(o->rd, o->o); break;
    }
    *out = dup_string(s);
  });
}

w2n_status w2n_expansion_pole(const w2n_expansion* o, int order, w2n_field** out) {
  return guarded([&] {
    if (!o || !out) fail(errc::invalid_argument, "null argument");
    *out = new w2n_field{o->rd, o->o.coeff_at_pole(order, o->rd)};
  });
}

int w2n_expansion_max_pole(const w2n_expansion* o) {
  if (!o || !o->o.offset_is_integer()) return 0;
  int m = 0;
  for (const auto& [j, c] : o->o.coeffs) {
    int pole = j - static_cast<int>(o->o.offset.as_integer());
    if (!c.is_zero() && pole > m) m = pole;
  }
  return m;
}

void w2n_expansion_free(w2n_expansion* o) { delete o; }

void w2n_suite_options_init(w2n_suite_options* opt) {
  if (!opt) return;
  opt->n_max = 4;
  opt->depth = 2;
  opt->fock_cutoff = 4;
  opt->jobs = 1;
  opt->k_value = nullptr;
}

w2n_status w2n_run_suite(const char* name, const w2n_suite_options* opt, w2n_report** out) {
  return guarded([&] {
    if (!name || !out) fail(errc::invalid_argument, "null argument");
    SuiteOptions o;
    if (opt) {
      o.n_max = opt->n_max;
      o.depth = opt->depth;
      o.fock_cutoff = opt->fock_cutoff;
      o.jobs = opt->jobs;
      if (opt->k_value) o.k_value = bigrat_parse(opt->k_value);
    }
    *out = new w2n_report{run_suite(name, o)};
  });
}

w2n_status w2n_report_render(const w2n_report* r, w2n_format format, char** out) {
  return guarded([&] {
    if (!r || !out) fail(errc::invalid_argument, "null argument");
    std::string s;
    switch (format) {
      case W2N_FORMAT_TEXT: s = render_text(r->r); break;
      case W2N_FORMAT_LATEX: s = render_latex(r->r); break;
      case W2N_FORMAT_JSON: s = render_json(r->r); break;
    }
    *out = dup_string(s);
  });
}

w2n_status w2n_report_parse(const char* json_text, w2n_report** out) {
  return guarded([&] {
    if (!json_text || !out) fail(errc::invalid_argument, "null argument");
    *out = new w2n_report{report_from_json(json_text)};
  });
}

int w2n_report_failed(const w2n_report* r) { return r ? r->r.count(CheckStatus::fail) : -1; }

int w2n_report_passed(const w2n_report* r) { return r ? r->r.count(CheckStatus::pass) : -1; }

void w2n_report_free(w2n_report* r) { delete r; }

} // extern "C"
