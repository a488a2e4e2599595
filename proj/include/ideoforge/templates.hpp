#pragma once

#include <map>
#include <string>
#include <string_view>

namespace ideoforge {

// The five prompt templates shipped under data/templates/. The bodies are
// compiled in verbatim; template_body() is the single source the data files
// are checked against.
enum class TemplateKind {
    InstructionGen,    // bootstrap generation; slots [instruction 1..5], [topic]
    PartisanResponse,  // slots [topic], [leaning], [instruction]
    FreeResponse,      // slot [instruction]
    IdeologyJudge,     // slots [topic], [instruction]
    TopicRelevance,    // slots [topic 1..5], [instruction]
};

std::string_view template_name(TemplateKind k);
std::string_view template_body(TemplateKind k);

using SlotMap = std::map<std::string, std::string>;

// Substitutes every [placeholder] in the template body. Throws ParseError
// naming the placeholder when a slot is missing, and when a provided slot
// does not occur in the template.
std::string render(TemplateKind kind, const SlotMap& slots);
std::string render_body(std::string_view body, const SlotMap& slots);

// The candidate delimiter used by the instruction-generation format.
inline constexpr std::string_view kCandidateDelimiter = "%%%";

}  // namespace ideoforge
