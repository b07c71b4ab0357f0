#ifndef MCRS_JSON_IO_HPP
#define MCRS_JSON_IO_HPP

#include <json.hpp>

#include "mcrs/approx2d.hpp"
#include "mcrs/approx3d.hpp"
#include "mcrs/cf.hpp"
#include "mcrs/form.hpp"
#include "mcrs/group.hpp"
#include "mcrs/sails.hpp"

namespace mcrs {

using Json = nlohmann::json;

// Real numbers serialize as {"text": exact-or-interval form, "decimal": double
// approximation}; integers as decimal strings (they can exceed 2^63).

Json json_of(const Real& x);
Json json_of(const Complex& z);
Json json_of(const Int& n);

Json json_of(const ContinuedFraction& cf);
Json json_of(const Convergent& c);
Json json_of(const BoxApprox& b);

Json json_of(const EigenLine& l);
Json json_of(const MCRSGroup& g);
Json json_of(const MDForm& f);
Json json_of(const DiscrepancyValue& d);

Json json_of(const PruningCertificate& c);
Json json_of(const ApproxResult& r);
Json json_of(const LagrangeRateReport& r);

Json json_of(const SimulCandidate& v);
Json json_of(const SimulSeqEntry& e);
Json json_of(const SimulResult& r);
Json json_of(const TableRowVerdict& v);
Json json_of(const TableReport& r);

Json json_of(const SailPolyline& p);

// Versioned top-level envelope: {"schema": "mcrs-approx/1", "command": ...,
// "result": payload}.
Json json_envelope(const std::string& command, Json payload);

// Deterministic serialization (sorted keys, 2-space indent, trailing newline).
std::string json_print(const Json& j);

}  // namespace mcrs

#endif
