#pragma once

#include "sharp/certify.hpp"
#include "sharp/designs.hpp"
#include "sharp/linsys.hpp"
#include "sharp/sharp_search.hpp"

#include <json.hpp>

#include <string>

namespace sharp::report {

using Json = nlohmann::json;

/// Every report carries "kind" and "elapsed_ms"; keys are emitted sorted so that
/// reruns differ only in timing.
Json to_json(const certify::VerificationReport& report);
Json to_json(const designs::RefutationTrace& trace);
Json to_json(const search::SearchResult& result, const std::string& group_name, std::size_t t,
             double elapsed_ms);
Json to_json(const linsys::SolveOutcome& outcome, const linsys::ExactSystem& system, double elapsed_ms);

const char* to_string(designs::RefutationVerdict verdict);

/// Pretty JSON text followed by a newline.
std::string render(const Json& json);

/// One-line human summary of a report.
std::string summary(const Json& json);

}  // namespace sharp::report
