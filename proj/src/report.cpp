#include "sharp/report.hpp"

namespace sharp::report {

namespace {

Json spectrum_json(const designs::Spectrum& spectrum) {
  Json out = Json::object();
  for (const auto& [size, count] : spectrum) out[std::to_string(size)] = count;
  return out;
}

}  // namespace

const char* to_string(designs::RefutationVerdict verdict) {
  switch (verdict) {
    case designs::RefutationVerdict::refuted_non_integral: return "refuted (non-integral count)";
    case designs::RefutationVerdict::refuted_contradiction: return "refuted (k - lambda = 1 contradiction)";
    case designs::RefutationVerdict::trivial_design: return "trivial design, inapplicable";
  }
  return "?";
}

Json to_json(const certify::VerificationReport& report) {
  Json out;
  out["kind"] = "verify";
  out["case"] = report.case_name;
  out["mode"] = report.mode;
  out["spectrum"] = spectrum_json(report.spectrum);
  out["side_condition"] = report.side_condition;
  out["conclusion"] = certify::to_string(report.conclusion);
  out["assumptions"] = report.assumptions;
  out["notes"] = report.notes;
  out["elapsed_ms"] = report.elapsed_ms;
  if (report.certificate) {
    const auto& c = *report.certificate;
    out["domain_size"] = c.domain_size;
    out["B_size"] = c.b.count();
    out["C_size"] = c.c.count();
    out["p"] = c.p;
    out["family"] = {
        {"kind", c.family.kind == certify::FamilyDescriptor::Kind::enumerated_group ? "enumerated group"
                                                                                    : "named family"},
        {"name", c.family.name},
        {"rule", c.family.rule}};
  }
  out["sub_reports"] = Json::array();
  for (const auto& sub : report.sub_reports) out["sub_reports"].push_back(to_json(sub));
  return out;
}

Json to_json(const designs::RefutationTrace& trace) {
  Json out;
  out["kind"] = "design-check";
  out["v"] = trace.params.v;
  out["k"] = trace.params.k;
  out["lambda"] = trace.params.lambda;
  out["steps"] = Json::array();
  for (const auto& s : trace.steps)
    out["steps"].push_back({{"claim", s.claim}, {"detail", s.detail}, {"holds", s.holds}});
  out["verdict"] = to_string(trace.verdict);
  out["conclusion"] = trace.conclusion;
  out["elapsed_ms"] = 0.0;
  return out;
}

Json to_json(const search::SearchResult& result, const std::string& group_name, std::size_t t,
             double elapsed_ms) {
  Json out;
  out["kind"] = "search-sharp";
  out["group"] = group_name;
  out["t"] = t;
  out["status"] = search::to_string(result.status);
  out["nodes"] = result.nodes;
  out["witness"] = result.witness ? Json(result.witness->elements) : Json(nullptr);
  out["elapsed_ms"] = elapsed_ms;
  return out;
}

Json to_json(const linsys::SolveOutcome& outcome, const linsys::ExactSystem& system, double elapsed_ms) {
  Json out;
  out["kind"] = "linsys";
  out["ring"] = outcome.ring;
  out["status"] = linsys::to_string(outcome.status);
  out["rows"] = system.rows;
  out["cols"] = system.cols;
  out["notes"] = outcome.notes;
  if (outcome.status == linsys::SolveStatus::solvable) {
    Json witness = Json::object();
    for (std::size_t c = 0; c < outcome.witness.size(); ++c)
      if (sgn(outcome.witness[c]) != 0) {
        const std::string label = c < system.variable_labels.size() ? system.variable_labels[c] : "x" + std::to_string(c);
        witness[label] = outcome.witness[c].get_str();
      }
    out["witness"] = witness;
  } else {
    out["witness"] = nullptr;
  }
  out["elapsed_ms"] = elapsed_ms;
  return out;
}

std::string render(const Json& json) { return json.dump(2) + "\n"; }

std::string summary(const Json& json) {
  const std::string kind = json.at("kind");
  if (kind == "verify") return json.at("case").get<std::string>() + ": " + json.at("conclusion").get<std::string>();
  if (kind == "design-check") return json.at("conclusion");
  if (kind == "search-sharp") {
    if (json.at("witness").is_null()) return json.at("status");
    std::string out;
    for (const auto& i : json.at("witness")) out += (out.empty() ? "" : " ") + std::to_string(i.get<std::size_t>());
    return out;
  }
  if (kind == "linsys") return json.at("ring").get<std::string>() + ": " + json.at("status").get<std::string>();
  if (kind == "selftest") return json.at("passed").get<bool>() ? "selftest passed" : "selftest FAILED";
  return kind;
}

}  // namespace sharp::report
