#include "w2n/report.hpp"

#include <sstream>

#include "json.hpp"

namespace w2n {

using nlohmann::json;

int Report::count(CheckStatus s) const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status == s) ++n;
  return n;
}

CheckResult to_check_result(const IdentityCheck& c, double millis) {
  CheckResult r;
  r.id = c.id;
  r.detail = c.detail;
  r.witness = c.witness;
  r.millis = millis;
  if (c.skipped)
    r.status = CheckStatus::skipped;
  else
    r.status = c.pass ? CheckStatus::pass : (c.optional_check ? CheckStatus::warning : CheckStatus::fail);
  return r;
}

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::warning: return "warning";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

CheckStatus status_from(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "warning") return CheckStatus::warning;
  if (s == "skipped") return CheckStatus::skipped;
  fail(errc::parse, "unknown check status '" + s + "'");
}

} // namespace

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "suite " << r.suite << "\n";
  for (const auto& c : r.checks) {
    os << "  [" << status_name(c.status) << "] " << c.id;
    if (!c.detail.empty()) os << " : " << c.detail;
    if (!c.witness.empty()) os << "\n      " << c.witness;
    os << "\n";
  }
  os << "passed " << r.count(CheckStatus::pass) << ", failed " << r.count(CheckStatus::fail)
     << ", warnings " << r.count(CheckStatus::warning) << ", skipped " << r.count(CheckStatus::skipped)
     << " (" << static_cast<long>(r.total_ms) << " ms)\n";
  return os.str();
}

std::string render_json(const Report& r) {
  // No timing in the JSON form: reports are byte-identical across runs.
  json j;
  j["suite"] = r.suite;
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    json jc;
    jc["id"] = c.id;
    jc["detail"] = c.detail;
    jc["status"] = status_name(c.status);
    if (!c.witness.empty()) jc["witness"] = c.witness;
    j["checks"].push_back(jc);
  }
  j["passed"] = r.count(CheckStatus::pass);
  j["failed"] = r.count(CheckStatus::fail);
  j["warnings"] = r.count(CheckStatus::warning);
  j["skipped"] = r.count(CheckStatus::skipped);
  return j.dump(2) + "\n";
}

std::string render_latex(const Report& r) {
  std::ostringstream os;
  os << "\\begin{tabular}{llll}\n";
  os << "\\textbf{check} & \\textbf{status} & \\textbf{detail} \\\\\n";
  for (const auto& c : r.checks) {
    std::string detail = c.detail;
    for (auto& ch : detail)
      if (ch == '_') ch = '-';
    std::string id = c.id;
    for (auto& ch : id)
      if (ch == '_') ch = '-';
    os << id << " & " << status_name(c.status) << " & " << detail << " \\\\\n";
  }
  os << "\\end{tabular}\n";
  return os.str();
}

Report report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("invalid report JSON: ") + e.what());
  }
  Report r;
  r.suite = j.value("suite", "");
  r.total_ms = j.value("total_ms", 0.0);
  for (const auto& jc : j.value("checks", json::array())) {
    CheckResult c;
    c.id = jc.value("id", "");
    c.detail = jc.value("detail", "");
    c.witness = jc.value("witness", "");
    c.status = status_from(jc.value("status", "pass"));
    r.checks.push_back(std::move(c));
  }
  return r;
}

namespace {

json momentum_json(const RootData& rd, const Momentum& p) {
  json j = json::object();
  for (int i = 0; i < rd.dim(); ++i)
    if (!p[i].is_zero()) j[rd.label_name(i)] = p[i].str();
  return j;
}

json field_json(const RootData& rd, const VertexField& f) {
  json j;
  j["momentum"] = momentum_json(rd, f.momentum);
  j["terms"] = json::array();
  for (const auto& [m, c] : f.poly.terms()) {
    json jt;
    jt["mono"] = json::array();
    for (const auto& fac : m.factors()) jt["mono"].push_back({rd.label_name(fac.label), fac.deriv});
    jt["coeff"] = c.str();
    j["terms"].push_back(jt);
  }
  return j;
}

} // namespace

std::string render_json(const RootData& rd, const VertexField& f) {
  return field_json(rd, f).dump(2) + "\n";
}

std::string render_json(const RootData& rd, const LaurentOPE& o) {
  json j;
  j["offset"] = o.offset.str();
  j["poles"] = json::array();
  for (auto it = o.coeffs.rbegin(); it != o.coeffs.rend(); ++it) {
    if (it->first <= 0) continue;  // singular part only
    if (it->second.is_zero()) continue;
    json jp;
    jp["order"] = it->first;
    jp["field"] = field_json(rd, it->second);
    j["poles"].push_back(jp);
  }
  return j.dump(2) + "\n";
}

namespace {

std::string latex_coeff(const RatK& c, bool* negated) {
  *negated = false;
  if (c.is_one()) return "";
  if (c == RatK(-1)) {
    *negated = true;
    return "";
  }
  PolyK num = c.num(), den = c.den();
  std::string s = c.str();
  if (!s.empty() && s[0] == '-' && s.find('+') == std::string::npos) {
    *negated = true;
    s = s.substr(1);
  }
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    auto strip = [](std::string x) {
      if (x.size() >= 2 && x.front() == '(' && x.back() == ')') return x.substr(1, x.size() - 2);
      return x;
    };
    s = "\\frac{" + strip(n) + "}{" + strip(d) + "}";
  } else if (s.find_first_of("+*^") != std::string::npos &&
             !(s.front() == '(' && s.back() == ')')) {
    s = "(" + s + ")";
  }
  std::string out;
  for (char ch : s) {
    if (ch == '*')
      out += " ";
    else
      out += ch;
  }
  return out + "\\,";
}

std::string latex_label(const RootData& rd, int label) {
  const Label& l = rd.label_at(label);
  switch (l.k) {
    case Label::kind::a: return "A_{" + std::to_string(l.index) + "}";
    case Label::kind::q_plus: return rd.m() == 0 ? "Q" : "Q_{+}";
    case Label::kind::q_minus: return rd.m() == rd.n() ? "Q" : "Q_{-}";
    case Label::kind::y: return "Y";
  }
  return "?";
}

std::string latex_mono(const RootData& rd, const DiffMono& m) {
  std::string s;
  bool first = true;
  for (const auto& f : m.factors()) {
    if (!first) s += " ";
    if (f.deriv == 1)
      s += "\\partial ";
    else if (f.deriv > 1)
      s += "\\partial^{" + std::to_string(f.deriv) + "} ";
    s += latex_label(rd, f.label);
    first = false;
  }
  return s;
}

} // namespace

std::string render_latex(const RootData& rd, const VertexField& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.poly.terms()) {
    bool neg = false;
    std::string cs = latex_coeff(c, &neg);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (m.is_unit())
      os << (cs.empty() ? "1" : cs);
    else
      os << cs << latex_mono(rd, m);
    first = false;
  }
  std::string body = os.str();
  int y = rd.index_y();
  bool zero = momentum_is_zero(f.momentum);
  if (zero) return body;
  bool only_y = true;
  for (int i = 0; i < rd.dim(); ++i)
    if (i != y && !f.momentum[i].is_zero()) only_y = false;
  std::string expo = "e^{(p,\\varphi)}";
  if (only_y && f.momentum[y].is_one()) expo = "e^{\\Xi}";
  if (only_y && f.momentum[y] == RatK(-1)) expo = "e^{-\\Xi}";
  if (f.poly.terms().size() > 1) body = "\\bigl(" + body + "\\bigr)";
  return body + "\\, " + expo;
}

std::string render_latex(const RootData& rd, const LaurentOPE& o) {
  std::ostringstream os;
  bool first = true;
  for (auto it = o.coeffs.rbegin(); it != o.coeffs.rend(); ++it) {
    if (it->second.is_zero()) continue;
    RatK expo = RatK(it->first) - o.offset;  // pole order
    if (!first) os << " + ";
    os << "\\frac{" << render_latex(rd, it->second) << "}{(z-w)^{" << expo.str() << "}}";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

} // namespace w2n
