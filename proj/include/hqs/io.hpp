#pragma once

#include <string>
#include <variant>

#include "hqs/common.hpp"
#include "hqs/fock_tree.hpp"
#include "hqs/hier_state.hpp"
#include "hqs/measurement.hpp"
#include "hqs/tensor_states.hpp"
#include "hqs/wavelet.hpp"

namespace hqs::io {

// One serialized object. The kind tag selects the payload alternative:
// "hier", "two_level", "tree_tensor", "fock", "signal", "scale_field".
struct StateDocument {
    std::string kind;
    std::string name;     // optional metadata, empty = absent
    std::string comment;  // optional metadata, empty = absent
    std::variant<HierState, TwoLevelState, TreeTensorState, OccupationTree,
                 SampledSignal, ScaleField>
        payload;

    friend bool operator==(const StateDocument&, const StateDocument&) = default;
};

// Parses and structurally validates one document. Throws ParseError
// (malformed JSON or wrong element types, with a path to the element) or
// ValidationError (structural invariant violated). parse(serialize(x)) == x.
StateDocument parse_state_file(const std::string& text);

std::string serialize(const StateDocument& doc);

// Auxiliary input documents consumed by specific CLI commands.

// {"kind": "operator", "matrix": [[ [re,im], ... ], ...]}
struct OperatorDocument {
    std::size_t dim = 0;
    std::vector<Complex> entries;  // row-major
};
OperatorDocument parse_operator_file(const std::string& text);

// {"kind": "controlled_operator", "matrices": [matrix, ...]}
ControlledOperator parse_controlled_operator_file(const std::string& text);

// {"kind": "joint", "c": [[re,im], ...], "gram": [[ [re,im], ... ], ...]}
JointState parse_joint_file(const std::string& text);

}  // namespace hqs::io
