#pragma once

#include <json.hpp>
#include <memory>

#include "toplat/finset_topology.hpp"
#include "toplat/galois.hpp"
#include "toplat/hartmanis.hpp"
#include "toplat/linear.hpp"
#include "toplat/projective.hpp"
#include "toplat/rigidity.hpp"

namespace toplat {

using Json = nlohmann::ordered_json;

/// Parses text; throws ParseError.
Json parse_json(const std::string& text);

Json to_json(const FinTopology& t);
/// {"n", "opens"} through validate_topology.
FinTopology topology_from_json(const Json& j);
/// {"n", "opens"} up to 9 points, {"n", "hulls"} beyond.
Json to_json(const NbhdTopology& t);
NbhdTopology nbhd_topology_from_json(const Json& j);

Json to_json(const Bijection& b);
Json to_json(const ReconstructionResult& r);
Json lattice_table_to_json(std::span<const std::size_t> map);
/// {"size", "map"}; throws ParseError on a size mismatch.
std::vector<std::size_t> lattice_table_from_json(const Json& j);

Json to_json(std::span<const int> v);
Json to_json(const Subspace& s);
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json space_to_json(const VectorSpace& space);
std::shared_ptr<const VectorSpace> space_from_json(const Json& j);
Json vector_topology_to_json(const VectorSpace& space, const NbhdTopology& t);

Json to_json(const SubspaceIsoTable& t);
SubspaceIsoTable subspace_table_from_json(const Json& j);
Json to_json(const TauIsoTable& t);
TauIsoTable tau_table_from_json(const Json& j);

Json to_json(const TripleDecomposition& t);
Json to_json(const GaloisReport& r);
Json to_json(const TheoremBReport& r);
Json to_json(const TheoremAReport& r);
Json to_json(const FtpgResult& r);
Json to_json(const TheoremCReport& r);
Json to_json(const TypeCensus& c);

std::string to_string(CensusMode mode);

}  // namespace toplat
