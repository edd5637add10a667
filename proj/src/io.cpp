#include "hqs/io.hpp"

#include <json.hpp>

#include "hqs/errors.hpp"

namespace hqs::io {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ParseError(path + ": " + msg);
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("$: malformed JSON");
    return j;
}

const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing required key '") + key + "'");
    return *it;
}

const json* opt_member(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::size_t get_uint(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

Complex get_complex(const json& j, const std::string& path) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected a complex number as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<Complex> get_complex_vector(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<Complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_complex(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<double> get_double_vector(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::size_t> get_uint_vector(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<std::size_t> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_uint(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// row-major square matrix from nested arrays of [re, im]
std::pair<std::size_t, std::vector<Complex>> get_matrix(const json& j, const std::string& path) {
    get_array(j, path);
    const std::size_t n = j.size();
    if (n == 0) fail(path, "matrix must be nonempty");
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        get_array(j[r], rp);
        if (j[r].size() != n) fail(rp, "matrix row length differs from row count");
        for (std::size_t c = 0; c < n; ++c)
            entries.push_back(get_complex(j[r][c], rp + "[" + std::to_string(c) + "]"));
    }
    return {n, std::move(entries)};
}

json dump_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

json dump_complex_vector(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(dump_complex(z));
    return a;
}

// ---- hier ----

HierState parse_hier_node(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a node object");
    HierState s;
    if (const json* l = opt_member(j, "label"))
        s.root.label = get_string(*l, path + ".label");
    if (const json* a = opt_member(j, "amps"))
        s.root.amps = get_complex_vector(*a, path + ".amps");
    if (const json* c = opt_member(j, "children")) {
        get_array(*c, path + ".children");
        for (std::size_t i = 0; i < c->size(); ++i)
            s.children.push_back(
                parse_hier_node((*c)[i], path + ".children[" + std::to_string(i) + "]"));
    }
    return s;
}

json dump_hier_node(const HierState& s) {
    json j = json::object();
    j["label"] = s.root.label;
    j["amps"] = dump_complex_vector(s.root.amps);
    json c = json::array();
    for (const auto& child : s.children) c.push_back(dump_hier_node(child));
    j["children"] = c;
    return j;
}

// ---- two_level ----

TwoLevelState parse_two_level(const json& j, const std::string& path) {
    TwoLevelState s;
    s.macro_dim = get_uint(member(j, "macro_dim", path), path + ".macro_dim");
    s.micro_dims = get_uint_vector(member(j, "micro_dims", path), path + ".micro_dims");
    const json* dense = opt_member(j, "coeffs");
    const json* sparse = opt_member(j, "coeffs_sparse");
    if (!!dense == !!sparse)
        fail(path, "exactly one of 'coeffs' and 'coeffs_sparse' is required");
    if (dense) {
        s.coeffs = get_complex_vector(*dense, path + ".coeffs");
    } else {
        const std::size_t D = product(s.micro_dims);
        s.coeffs.assign(s.macro_dim * D, Complex(0.0));
        const std::string sp = path + ".coeffs_sparse";
        get_array(*sparse, sp);
        for (std::size_t e = 0; e < sparse->size(); ++e) {
            const std::string ep = sp + "[" + std::to_string(e) + "]";
            const json& entry = (*sparse)[e];
            const auto idx = get_uint_vector(member(entry, "idx", ep), ep + ".idx");
            if (idx.size() != 1 + s.micro_dims.size())
                fail(ep + ".idx", "index tuple must be (j, i_1, ..., i_k)");
            if (idx[0] >= s.macro_dim) fail(ep + ".idx[0]", "macro index out of range");
            std::size_t flat = 0;
            for (std::size_t m = 0; m < s.micro_dims.size(); ++m) {
                if (idx[m + 1] >= s.micro_dims[m])
                    fail(ep + ".idx[" + std::to_string(m + 1) + "]",
                         "micro index out of range");
                flat = flat * s.micro_dims[m] + idx[m + 1];
            }
            s.coeffs[idx[0] * D + flat] = get_complex(member(entry, "val", ep), ep + ".val");
        }
    }
    validate(s);
    return s;
}

json dump_two_level(const TwoLevelState& s) {
    json j = json::object();
    j["macro_dim"] = s.macro_dim;
    j["micro_dims"] = s.micro_dims;
    j["coeffs"] = dump_complex_vector(s.coeffs);
    return j;
}

// ---- tree_tensor ----

TreeTensorNode parse_tree_tensor_node(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a node object");
    TreeTensorNode n;
    if (const json* l = opt_member(j, "label"))
        n.label = get_string(*l, path + ".label");
    n.dims = get_uint_vector(member(j, "dims", path), path + ".dims");
    n.data = get_complex_vector(member(j, "tensor", path), path + ".tensor");
    if (const json* c = opt_member(j, "children")) {
        get_array(*c, path + ".children");
        for (std::size_t i = 0; i < c->size(); ++i)
            n.children.push_back(
                parse_tree_tensor_node((*c)[i], path + ".children[" + std::to_string(i) + "]"));
    }
    return n;
}

json dump_tree_tensor_node(const TreeTensorNode& n) {
    json j = json::object();
    j["label"] = n.label;
    j["dims"] = n.dims;
    j["tensor"] = dump_complex_vector(n.data);
    json c = json::array();
    for (const auto& child : n.children) c.push_back(dump_tree_tensor_node(child));
    j["children"] = c;
    return j;
}

// ---- fock ----

Rational parse_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational::make(j.get<std::int64_t>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
        return Rational::make(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
    fail(path, "expected a quantum number as an integer or [num, den]");
}

ParticleKind parse_kind(const json& j, const std::string& path) {
    const std::string s = get_string(j, path);
    if (s == "fermion") return ParticleKind::fermion;
    if (s == "boson") return ParticleKind::boson;
    if (s == "composite") return ParticleKind::composite;
    fail(path, "particle type must be fermion, boson or composite");
}

const char* kind_name(ParticleKind k) {
    switch (k) {
        case ParticleKind::fermion: return "fermion";
        case ParticleKind::boson: return "boson";
        default: return "composite";
    }
}

OccupationNode parse_occupation_node(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a node object");
    OccupationNode n;
    n.label = get_string(member(j, "label", path), path + ".label");
    if (const json* t = opt_member(j, "type")) n.kind = parse_kind(*t, path + ".type");
    if (const json* q = opt_member(j, "qnumbers")) {
        get_array(*q, path + ".qnumbers");
        for (std::size_t i = 0; i < q->size(); ++i)
            n.qnumbers.push_back(
                parse_rational((*q)[i], path + ".qnumbers[" + std::to_string(i) + "]"));
    }
    if (const json* c = opt_member(j, "children")) {
        get_array(*c, path + ".children");
        std::string prev;
        for (std::size_t i = 0; i < c->size(); ++i) {
            const std::string cp = path + ".children[" + std::to_string(i) + "]";
            OccupationNode child = parse_occupation_node((*c)[i], cp);
            if (i > 0 && !(prev < child.label))
                throw ValidationError(cp + ".label: sibling labels must be unique and sorted");
            prev = child.label;
            n.children.push_back(std::move(child));
        }
    }
    return n;
}

json dump_occupation_node(const OccupationNode& n) {
    json j = json::object();
    j["label"] = n.label;
    j["type"] = kind_name(n.kind);
    json q = json::array();
    for (const auto& r : n.qnumbers) q.push_back(json::array({r.num, r.den}));
    j["qnumbers"] = q;
    json c = json::array();
    for (const auto& child : n.children) c.push_back(dump_occupation_node(child));
    j["children"] = c;
    return j;
}

OccupationTree parse_fock(const json& j, const std::string& path) {
    const json& st = member(j, "state", path);
    if (st.is_string()) {
        const std::string tag = st.get<std::string>();
        if (tag == "vacuum") return OccupationTree::vacuum();
        if (tag == "zero") return OccupationTree::zero();
        fail(path + ".state", "expected 'vacuum', 'zero' or a node object");
    }
    return OccupationTree::tree(parse_occupation_node(st, path + ".state"));
}

json dump_fock(const OccupationTree& t) {
    if (t.is_vacuum()) return json("vacuum");
    if (t.is_zero()) return json("zero");
    return dump_occupation_node(t.root());
}

// ---- signal ----

SampledSignal parse_signal(const json& j, const std::string& path) {
    SampledSignal s;
    s.x0 = get_number(member(j, "x0", path), path + ".x0");
    s.dx = get_number(member(j, "dx", path), path + ".dx");
    s.samples = get_complex_vector(member(j, "samples", path), path + ".samples");
    validate(s);
    return s;
}

// ---- scale_field ----

ScaleField parse_scale_field(const json& j, const std::string& path) {
    ScaleField f;
    f.scales = get_double_vector(member(j, "scales", path), path + ".scales");
    f.translations =
        get_double_vector(member(j, "translations", path), path + ".translations");
    f.values = get_complex_vector(member(j, "values", path), path + ".values");
    try {
        validate(f);
    } catch (const GridMismatch& e) {
        throw ValidationError(std::string(path) + ": " + e.what());
    }
    if (f.values.size() != f.scales.size() * f.translations.size())
        throw ValidationError(path + ".values: size must be scales x translations");
    return f;
}

}  // namespace

StateDocument parse_state_file(const std::string& text) {
    const json j = parse_text(text);
    StateDocument doc;
    doc.kind = get_string(member(j, "kind", "$"), "$.kind");
    if (const json* n = opt_member(j, "name")) doc.name = get_string(*n, "$.name");
    if (const json* c = opt_member(j, "comment"))
        doc.comment = get_string(*c, "$.comment");
    if (doc.kind == "hier") {
        HierState s = parse_hier_node(member(j, "root", "$"), "$.root");
        validate(s);
        doc.payload = std::move(s);
    } else if (doc.kind == "two_level") {
        doc.payload = parse_two_level(j, "$");
    } else if (doc.kind == "tree_tensor") {
        TreeTensorState t{parse_tree_tensor_node(member(j, "root", "$"), "$.root")};
        validate(t);
        doc.payload = std::move(t);
    } else if (doc.kind == "fock") {
        doc.payload = parse_fock(j, "$");
    } else if (doc.kind == "signal") {
        doc.payload = parse_signal(j, "$");
    } else if (doc.kind == "scale_field") {
        doc.payload = parse_scale_field(j, "$");
    } else {
        fail("$.kind", "unrecognized kind '" + doc.kind + "'");
    }
    return doc;
}

std::string serialize(const StateDocument& doc) {
    json j = json::object();
    j["kind"] = doc.kind;
    if (!doc.name.empty()) j["name"] = doc.name;
    if (!doc.comment.empty()) j["comment"] = doc.comment;
    if (const auto* s = std::get_if<HierState>(&doc.payload)) {
        j["root"] = dump_hier_node(*s);
    } else if (const auto* s = std::get_if<TwoLevelState>(&doc.payload)) {
        json body = dump_two_level(*s);
        for (auto& [k, v] : body.items()) j[k] = std::move(v);
    } else if (const auto* s = std::get_if<TreeTensorState>(&doc.payload)) {
        j["root"] = dump_tree_tensor_node(s->root);
    } else if (const auto* s = std::get_if<OccupationTree>(&doc.payload)) {
        j["state"] = dump_fock(*s);
    } else if (const auto* s = std::get_if<SampledSignal>(&doc.payload)) {
        j["x0"] = s->x0;
        j["dx"] = s->dx;
        j["samples"] = dump_complex_vector(s->samples);
    } else if (const auto* s = std::get_if<ScaleField>(&doc.payload)) {
        j["scales"] = s->scales;
        j["translations"] = s->translations;
        j["values"] = dump_complex_vector(s->values);
    }
    return j.dump(2) + "\n";
}

OperatorDocument parse_operator_file(const std::string& text) {
    const json j = parse_text(text);
    const std::string kind = get_string(member(j, "kind", "$"), "$.kind");
    if (kind != "operator") fail("$.kind", "expected kind 'operator'");
    auto [dim, entries] = get_matrix(member(j, "matrix", "$"), "$.matrix");
    return OperatorDocument{dim, std::move(entries)};
}

ControlledOperator parse_controlled_operator_file(const std::string& text) {
    const json j = parse_text(text);
    const std::string kind = get_string(member(j, "kind", "$"), "$.kind");
    if (kind != "controlled_operator") fail("$.kind", "expected kind 'controlled_operator'");
    const json& mats = get_array(member(j, "matrices", "$"), "$.matrices");
    ControlledOperator op;
    op.macro_dim = mats.size();
    for (std::size_t m = 0; m < mats.size(); ++m)
        op.matrices.push_back(
            get_matrix(mats[m], "$.matrices[" + std::to_string(m) + "]").second);
    return op;
}

JointState parse_joint_file(const std::string& text) {
    const json j = parse_text(text);
    const std::string kind = get_string(member(j, "kind", "$"), "$.kind");
    if (kind != "joint") fail("$.kind", "expected kind 'joint'");
    JointState js;
    js.c = get_complex_vector(member(j, "c", "$"), "$.c");
    auto [n, gram] = get_matrix(member(j, "gram", "$"), "$.gram");
    js.apparatus = ApparatusModel{n, std::move(gram)};
    validate(js.apparatus);
    if (js.c.size() != n)
        throw ValidationError("$.c: coefficient count does not match the gram dimension");
    return js;
}

}  // namespace hqs::io
