#ifndef QEBT_JSON_IO_HPP
#define QEBT_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "qebt/decompose.hpp"
#include "qebt/holevo.hpp"
#include "qebt/types.hpp"

namespace qebt {

using Json = nlohmann::ordered_json;

// Channel schema: {"t":[t1,t2,t3],"lambda":[l1,l2,l3]} or
// {"matrix":[[...4],[...4],[...4],[...4]]}; exactly one of the two key sets.
PauliTransferMatrix channel_from_json(const Json& j);
Json channel_to_json(const PauliTransferMatrix& channel);

Json canonical_to_json(const CanonicalForm& form);

// Ensemble schema: {"items":[{"w":[...],"u0":...,"u":[...]}]}.
HolevoEnsemble ensemble_from_json(const Json& j);
Json ensemble_to_json(const HolevoEnsemble& ensemble);

Json choi_to_json(const ChoiMatrix& choi);
Json decomposition_to_json(const CqDecomposition& decomposition);

Json vector_to_json(const Eigen::Vector3d& v);
Json matrix_to_json(const Eigen::Matrix3d& m);
Json matrix_to_json(const Eigen::Matrix4d& m);

// Serializes with every float printed to 17 significant digits, so output
// is bit-stable across runs and lossless to reparse.
std::string dump17(const Json& j, int indent = 2);
std::string format17(double value);

}  // namespace qebt

#endif
