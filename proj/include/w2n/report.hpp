#pragma once

#include <string>
#include <vector>

#include "w2n/wick.hpp"

namespace w2n {

enum class CheckStatus { pass, fail, warning, skipped };

struct CheckResult {
  std::string id;
  std::string detail;
  CheckStatus status = CheckStatus::pass;
  std::string witness;
  double millis = 0.0;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;
  double total_ms = 0.0;

  int count(CheckStatus s) const;
  bool ok() const { return count(CheckStatus::fail) == 0; }
};

CheckResult to_check_result(const IdentityCheck& c, double millis = 0.0);

std::string render_text(const Report& r);
std::string render_json(const Report& r);
std::string render_latex(const Report& r);
Report report_from_json(const std::string& text);

// Field and expansion serialization for the CLI.
std::string render_json(const RootData& rd, const VertexField& f);
std::string render_json(const RootData& rd, const LaurentOPE& o);
std::string render_latex(const RootData& rd, const VertexField& f);
std::string render_latex(const RootData& rd, const LaurentOPE& o);

} // namespace w2n
