#pragma once

#include <json.hpp>

#include "taulehmer/bounds.hpp"
#include "taulehmer/curves.hpp"
#include "taulehmer/lehmer.hpp"
#include "taulehmer/lucas.hpp"
#include "taulehmer/thue.hpp"

namespace tlcli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "taulehmer-report/1";

// Integers fitting in 64 bits become numbers, larger ones decimal strings.
Json num(const tl::Int& v);
Json rat(const tl::Rat& v);  // "p/q"
// Decimal strings rounded outward to `digits` places.
Json enclosure(const tl::Enclosure& e, unsigned digits = 6);

Json to_json(const tl::Factorization& f);
Json to_json(const tl::ThueForm& f);
Json to_json(const tl::ThueCertificate& c);
Json to_json(const tl::CurveSpec& s);
Json to_json(const tl::TableCell& c);
Json to_json(const tl::DiophantineCondition& c);
Json to_json(const tl::ConditionVerdict& v);
Json to_json(const tl::AdmissibilityReport& r);
Json to_json(const tl::SubProblem& s);
Json to_json(const tl::EffectiveBound& b);
Json to_json(const tl::DefectRecord& d);

// "excluded within bounds", "candidates found" or "conditional (GRH per paper)"
std::string verdict_text(const tl::AdmissibilityReport& r);

}  // namespace tlcli
