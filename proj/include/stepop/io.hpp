#pragma once

#include <string>

#include <json.hpp>

#include "stepop/approx.hpp"
#include "stepop/oracle.hpp"
#include "stepop/representation.hpp"
#include "stepop/spectral.hpp"

namespace stepop {

/// All documents use one self-describing JSON structure with a fixed field
/// order; complex numbers are always two-element [re, im] arrays, subsets
/// are sorted 1-based dimension lists, and list orders follow the canonical
/// enumerations.
using Json = nlohmann::ordered_json;

Json operator_to_json(const StepOperator& a);
StepOperator operator_from_json(const Json& doc);

Json function_to_json(const StepFunction& u);
StepFunction function_from_json(const Json& doc);

Json representation_to_json(const Representation& r);
Representation representation_from_json(const Json& doc);

Json kernel_to_json(const SampledKernel& k);
SampledKernel kernel_from_json(const Json& doc);

Json spectrum_to_json(const SpectrumReport& report);
Json tracedet_to_json(const TraceDetTuple& tuple, const std::string& kind);

/// Canonical text form: two-space indent plus trailing newline. Writing the
/// parse of a canonical document reproduces it byte for byte.
std::string write_document(const Json& doc);

/// Parse with ParseError on malformed JSON.
Json read_document(const std::string& text);

Json load_document(const std::string& path);
void store_document(const Json& doc, const std::string& path);

}  // namespace stepop
