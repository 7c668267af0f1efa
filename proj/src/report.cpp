#include "cartanlie/report.hpp"

namespace cartanlie {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::TheoremViolation: return "theorem-violation";
  }
  return "?";
}

Json to_json(const Report& r) {
  Json j{{"name", r.name},
         {"parameters", r.parameters},
         {"status", to_string(r.status)},
         {"evidence", r.evidence},
         {"gating", r.gating}};
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

Json to_json(const RunConfig& c) {
  Json j{{"command", c.command},
         {"p", c.p},
         {"seed", c.seed},
         {"max_ext", c.max_ext},
         {"dim_cap", c.dim_cap},
         {"suites", c.suites}};
  j["type"] = c.type ? Json(std::string(1, *c.type)) : Json(nullptr);
  j["m"] = c.m ? Json(*c.m) : Json(nullptr);
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  j["samples"] = c.samples ? Json(*c.samples) : Json(nullptr);
  j["elem"] = c.elem ? Json(*c.elem) : Json(nullptr);
  return j;
}

bool ReportDocument::passed() const noexcept {
  for (const auto& r : reports)
    if (r.gating && (r.status == Status::Fail || r.status == Status::TheoremViolation)) return false;
  return true;
}

std::string ReportDocument::serialize() const {
  Json rs = Json::array();
  for (const auto& r : reports) rs.push_back(to_json(r));
  const Json doc{{"schema", kReportSchema},
                 {"tool", "cartanlie"},
                 {"version", kToolVersion},
                 {"config", config},
                 {"reports", rs},
                 {"status", passed() ? "pass" : "fail"}};
  return doc.dump(2) + "\n";
}

}  // namespace cartanlie
