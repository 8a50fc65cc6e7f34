#ifndef MRLAB_REPORT_JSON_HPP
#define MRLAB_REPORT_JSON_HPP

#include <json.hpp>

#include "mrlab/assembly.hpp"
#include "mrlab/bounds.hpp"
#include "mrlab/delta.hpp"
#include "mrlab/generators.hpp"
#include "mrlab/triples.hpp"

// JSON views of every report type. Exact values are emitted as canonical
// rational strings, never as floating point; object keys are sorted by the
// JSON library, so serialization is deterministic.

namespace mrlab {

nlohmann::json to_json(const DeltaProfile& profile);
nlohmann::json to_json(const LineRecord& line);
nlohmann::json to_json(const std::vector<LineRecord>& lines);
nlohmann::json to_json(const MrCheck& check);
nlohmann::json to_json(const TripleSystem& system);
nlohmann::json to_json(const TripleCheck& check);
nlohmann::json to_json(const DesignParams& params);
nlohmann::json to_json(const ClaimReport& report);
nlohmann::json to_json(const PartitionDimReport& report);
nlohmann::json to_json(const EpsilonDecomposition& decomposition);
nlohmann::json to_json(const TailReport& report);
nlohmann::json to_json(const BoundValues& values);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const CoarseReport& report);
nlohmann::json to_json(const ArchiveEntry& entry);

// {"r": r, "triples": [[a, b, c], ...]}, 1-based elements.
TripleSystem triples_from_json(const nlohmann::json& value, const std::string& where = "");

}  // namespace mrlab

#endif
