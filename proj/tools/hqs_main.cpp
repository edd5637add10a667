#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hqs/errors.hpp"
#include "hqs/io.hpp"
#include "hqs/measurement.hpp"
#include "hqs/oracle.hpp"
#include "hqs/wavelet.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace hqs;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::StateDocument load(const std::string& path) {
    return io::parse_state_file(read_file(path));
}

Complex parse_complex_flag(const std::string& s, const std::string& flag) {
    double re = 0.0, im = 0.0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &extra) == 2) return {re, im};
    if (std::sscanf(s.c_str(), "%lf%c", &re, &extra) == 1) return {re, 0.0};
    throw ParseError(flag + ": expected a complex number as 're' or 're,im'");
}

std::vector<std::size_t> parse_macro_set(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ParseError("--macro-set: expected a comma list of 1-based indices");
        }
    }
    if (out.empty()) throw ParseError("--macro-set: expected a comma list of 1-based indices");
    return out;
}

std::vector<std::string> split_path(const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '/')) out.push_back(tok);
    return out;
}

std::vector<std::size_t> path_as_indices(const std::string& s) {
    std::vector<std::size_t> out;
    for (const std::string& tok : split_path(s)) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ParseError("--path: expected slash-separated child indices");
        }
    }
    return out;
}

json dump_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

json dump_matrix(const DensityMatrix& rho) {
    json rows = json::array();
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < rho.dim(); ++j) row.push_back(dump_complex(rho(i, j)));
        rows.push_back(row);
    }
    return rows;
}

struct Output {
    std::string format = "json";

    void emit(const json& doc, const std::string& text_view) const {
        if (format == "text")
            std::cout << text_view << "\n";
        else
            std::cout << doc.dump(2) << "\n";
    }
};

void emit_scalar(const Output& out, const std::string& command, const Complex& value,
                 double tol) {
    json j = json::object();
    j["kind"] = "scalar";
    j["command"] = command;
    j["value"] = dump_complex(value);
    j["tol"] = tol;
    std::ostringstream txt;
    txt.precision(17);
    txt << value.real();
    if (value.imag() != 0.0) txt << (value.imag() < 0 ? " - " : " + ")
                                 << std::abs(value.imag()) << "i";
    out.emit(j, txt.str());
}

void emit_density(const Output& out, const std::string& command, const DensityMatrix& rho,
                  double tol) {
    const auto violations = rho.invariant_violations(tol, tol, tol);
    if (!violations.empty()) {
        std::string msg = "produced density matrix violates its contract:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw ContractViolation(msg);
    }
    json j = json::object();
    j["kind"] = "density_matrix";
    j["command"] = command;
    j["dim"] = rho.dim();
    j["matrix"] = dump_matrix(rho);
    j["trace"] = dump_complex(rho.trace());
    j["purity"] = rho.purity();
    j["tol"] = tol;
    std::ostringstream txt;
    txt.precision(17);
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t k = 0; k < rho.dim(); ++k) {
            const Complex& z = rho(i, k);
            txt << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
                << "i)" << (k + 1 < rho.dim() ? " " : "");
        }
        if (i + 1 < rho.dim()) txt << "\n";
    }
    out.emit(j, txt.str());
}

// structured states have no lossy human view; both formats print the document
void emit_document(const Output&, const io::StateDocument& doc) {
    std::cout << io::serialize(doc);
}

Wavelet make_wavelet(const std::string& name) {
    if (name == "mexican_hat") return Wavelet::mexican_hat();
    if (name == "gaussian") return Wavelet::gaussian();
    throw ParseError("--wavelet: expected mexican_hat or gaussian");
}

template <class T>
const T& expect_payload(const io::StateDocument& doc, const char* wanted) {
    if (const T* p = std::get_if<T>(&doc.payload)) return *p;
    throw ValidationError(std::string("input document must have kind '") + wanted + "'");
}

struct Args {
    std::vector<std::string> inputs;
    std::size_t subsystem = 0;
    std::string path;
    std::string macro_set;
    double tol = 1e-10;
    Output out;
    std::string a = "1", b = "1";
    std::string operator_file;
    std::string wavelet = "mexican_hat";
    double scale_min = 0.0, scale_max = 0.0;
    std::size_t scale_count = 0;
    double cpsi = 0.0;
    std::string create_label;
    bool annihilate = false;
    std::string type = "composite";
    std::vector<std::string> qns;
};

const io::StateDocument& one_input(const Args& a, std::vector<io::StateDocument>& docs) {
    if (a.inputs.size() != 1) throw ParseError("--input: exactly one document expected");
    docs.push_back(load(a.inputs[0]));
    return docs.back();
}

int dispatch(const std::string& cmd, const Args& a) {
    std::vector<io::StateDocument> docs;
    if (cmd == "norm") {
        const auto& doc = one_input(a, docs);
        double n2 = 0.0;
        if (const auto* h = std::get_if<HierState>(&doc.payload))
            n2 = norm_sq(*h);
        else if (const auto* t = std::get_if<TwoLevelState>(&doc.payload))
            n2 = t->norm_sq();
        else if (const auto* t = std::get_if<TreeTensorState>(&doc.payload))
            n2 = tree_norm_sq(*t);
        else
            throw ValidationError("norm expects a hier, two_level or tree_tensor document");
        emit_scalar(a.out, cmd, Complex(std::sqrt(n2), 0.0), a.tol);
    } else if (cmd == "inner") {
        if (a.inputs.size() != 2) throw ParseError("--input: exactly two documents expected");
        const auto d1 = load(a.inputs[0]);
        const auto d2 = load(a.inputs[1]);
        const auto& s1 = expect_payload<HierState>(d1, "hier");
        const auto& s2 = expect_payload<HierState>(d2, "hier");
        emit_scalar(a.out, cmd, inner_product(s1, s2), a.tol);
    } else if (cmd == "combine") {
        if (a.inputs.size() != 2) throw ParseError("--input: exactly two documents expected");
        const auto d1 = load(a.inputs[0]);
        const auto d2 = load(a.inputs[1]);
        const auto& s1 = expect_payload<HierState>(d1, "hier");
        const auto& s2 = expect_payload<HierState>(d2, "hier");
        const Complex ca = parse_complex_flag(a.a, "--a");
        const Complex cb = parse_complex_flag(a.b, "--b");
        io::StateDocument out{"hier", "", "", linear_combine(ca, s1, cb, s2)};
        emit_document(a.out, out);
    } else if (cmd == "reduce") {
        const auto& doc = one_input(a, docs);
        if (const auto* t = std::get_if<TwoLevelState>(&doc.payload)) {
            if (a.subsystem == 0)
                throw ParseError("--subsystem: required for two_level input (1-based)");
            emit_density(a.out, cmd, reduced_density(*t, a.subsystem), a.tol);
        } else if (const auto* t = std::get_if<TreeTensorState>(&doc.payload)) {
            emit_density(a.out, cmd, branch_reduced_density(*t, path_as_indices(a.path)),
                         a.tol);
        } else {
            throw ValidationError("reduce expects a two_level or tree_tensor document");
        }
    } else if (cmd == "expect") {
        const auto& doc = one_input(a, docs);
        const auto& s = expect_payload<TwoLevelState>(doc, "two_level");
        if (a.operator_file.empty()) throw ParseError("--operator: required");
        const auto op = io::parse_operator_file(read_file(a.operator_file));
        emit_scalar(a.out, cmd, expectation_micro(s, op.entries), a.tol);
    } else if (cmd == "cexpect") {
        const auto& doc = one_input(a, docs);
        const auto& s = expect_payload<TwoLevelState>(doc, "two_level");
        if (a.operator_file.empty()) throw ParseError("--operator: required");
        const auto op = io::parse_controlled_operator_file(read_file(a.operator_file));
        emit_scalar(a.out, cmd, controlled_expectation(s, op), a.tol);
    } else if (cmd == "trace-apparatus") {
        if (a.inputs.size() != 1) throw ParseError("--input: exactly one document expected");
        const JointState js = io::parse_joint_file(read_file(a.inputs[0]));
        emit_density(a.out, cmd, trace_out_apparatus(js), a.tol);
    } else if (cmd == "project") {
        const auto& doc = one_input(a, docs);
        const auto& s = expect_payload<TwoLevelState>(doc, "two_level");
        if (a.macro_set.empty()) throw ParseError("--macro-set: required");
        const ProjectionResult r = macro_project(s, parse_macro_set(a.macro_set));
        json j = json::object();
        j["kind"] = "projection";
        j["command"] = cmd;
        j["probability"] = r.probability;
        j["post"] = json::parse(io::serialize(io::StateDocument{"two_level", "", "", r.post}));
        j["tol"] = a.tol;
        a.out.emit(j, "p = " + std::to_string(r.probability));
    } else if (cmd == "fock") {
        const auto& doc = one_input(a, docs);
        const auto& t = expect_payload<OccupationTree>(doc, "fock");
        OccupationTree result = OccupationTree::zero();
        if (!a.create_label.empty() && a.annihilate)
            throw ParseError("fock: --create and --annihilate are mutually exclusive");
        if (!a.create_label.empty()) {
            std::vector<Rational> qs;
            for (const std::string& q : a.qns) {
                long long num = 0, den = 1;
                char extra = 0;
                if (std::sscanf(q.c_str(), "%lld/%lld%c", &num, &den, &extra) == 2)
                    qs.push_back(Rational::make(num, den));
                else if (std::sscanf(q.c_str(), "%lld%c", &num, &extra) == 1)
                    qs.push_back(Rational::make(num));
                else
                    throw ParseError("--qn: expected an integer or 'num/den'");
            }
            ParticleKind kind = ParticleKind::composite;
            if (a.type == "fermion") kind = ParticleKind::fermion;
            else if (a.type == "boson") kind = ParticleKind::boson;
            else if (a.type != "composite")
                throw ParseError("--type: expected fermion, boson or composite");
            result = apply_creation(t, split_path(a.path), a.create_label, kind, qs);
        } else if (a.annihilate) {
            result = apply_annihilation(t, split_path(a.path));
        } else {
            throw ParseError("fock: one of --create or --annihilate is required");
        }
        emit_document(a.out, io::StateDocument{"fock", "", "", result});
    } else if (cmd == "pauli") {
        const auto& doc = one_input(a, docs);
        const auto& t = expect_payload<OccupationTree>(doc, "fock");
        const auto violations = pauli_check(t);
        json j = json::object();
        j["kind"] = "pauli_report";
        j["command"] = cmd;
        json v = json::array();
        for (const auto& pv : violations) {
            json e = json::object();
            e["parent_path"] = pv.parent_path;
            e["label1"] = pv.label1;
            e["label2"] = pv.label2;
            v.push_back(e);
        }
        j["violations"] = v;
        a.out.emit(j, violations.empty() ? "ok" : std::to_string(violations.size()) +
                                                      " violation(s)");
    } else if (cmd == "cwt-forward" || cmd == "cwt-check") {
        const auto& doc = one_input(a, docs);
        const auto& sig = expect_payload<SampledSignal>(doc, "signal");
        if (!(a.scale_min > 0.0) || !(a.scale_max > a.scale_min) || a.scale_count < 2)
            throw ParseError("--scale-min/--scale-max/--scale-count: a positive increasing "
                             "scale range with count >= 2 is required");
        const Wavelet w = make_wavelet(a.wavelet);
        const auto scales = log_spaced_scales(a.scale_min, a.scale_max, a.scale_count);
        std::vector<double> translations(sig.samples.size());
        for (std::size_t i = 0; i < translations.size(); ++i) translations[i] = sig.x(i);
        const ScaleField field = forward_cwt(sig, w, scales, translations);
        if (cmd == "cwt-forward") {
            emit_document(a.out, io::StateDocument{"scale_field", "", "", field});
        } else {
            const double cpsi = admissibility_constant(w);
            const double ratio = parseval_ratio(sig, field);
            json j = json::object();
            j["kind"] = "cwt_check";
            j["command"] = cmd;
            j["c_psi"] = cpsi;
            j["parseval_ratio"] = ratio;
            j["ratio_over_c_psi"] = ratio / cpsi;
            j["tol"] = a.tol;
            a.out.emit(j, "ratio/c_psi = " + std::to_string(ratio / cpsi));
        }
    } else if (cmd == "cwt-inverse") {
        const auto& doc = one_input(a, docs);
        const auto& field = expect_payload<ScaleField>(doc, "scale_field");
        const Wavelet w = make_wavelet(a.wavelet);
        const double cpsi = a.cpsi > 0.0 ? a.cpsi : admissibility_constant(w);
        emit_document(a.out, io::StateDocument{"signal", "", "", inverse_cwt(field, w, cpsi)});
    } else if (cmd == "flatten") {
        const auto& doc = one_input(a, docs);
        oracle::FlatState flat;
        if (const auto* t = std::get_if<TwoLevelState>(&doc.payload))
            flat = oracle::flatten(*t);
        else if (const auto* t = std::get_if<TreeTensorState>(&doc.payload))
            flat = oracle::flatten(*t);
        else
            throw ValidationError("flatten expects a two_level or tree_tensor document");
        json j = json::object();
        j["kind"] = "flat_state";
        j["command"] = cmd;
        json factors = json::array();
        for (const auto& f : flat.factors) {
            json e = json::object();
            e["role"] = f.role == oracle::FactorRole::macro ? "macro" : "micro";
            e["dim"] = f.dim;
            factors.push_back(e);
        }
        j["factors"] = factors;
        json amps = json::array();
        for (const auto& z : flat.amps) amps.push_back(dump_complex(z));
        j["amps"] = amps;
        j["tol"] = a.tol;
        a.out.emit(j, "dim = " + std::to_string(flat.dim()));
    } else {
        throw ParseError("unknown command '" + cmd + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchic quantum state toolkit"};
    app.require_subcommand(1);

    Args args;
    const std::vector<std::string> commands = {
        "norm", "inner", "combine", "reduce", "expect", "cexpect", "trace-apparatus",
        "project", "fock", "pauli", "cwt-forward", "cwt-inverse", "cwt-check", "flatten"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", args.inputs, "input document file (repeatable)");
        sub->add_option("--subsystem", args.subsystem, "1-based micro subsystem index");
        sub->add_option("--path", args.path, "slash-separated path");
        sub->add_option("--macro-set", args.macro_set, "comma list of 1-based macro indices");
        sub->add_option("--tol", args.tol, "numeric tolerance for output contracts");
        sub->add_option("--format", args.out.format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--a", args.a, "left coefficient, 're' or 're,im'");
        sub->add_option("--b", args.b, "right coefficient, 're' or 're,im'");
        sub->add_option("--operator", args.operator_file, "operator document file");
        sub->add_option("--wavelet", args.wavelet, "mexican_hat|gaussian");
        sub->add_option("--scale-min", args.scale_min, "smallest scale");
        sub->add_option("--scale-max", args.scale_max, "largest scale");
        sub->add_option("--scale-count", args.scale_count, "number of log-spaced scales");
        sub->add_option("--cpsi", args.cpsi, "admissibility constant override");
        sub->add_option("--create", args.create_label, "label to create (fock)");
        sub->add_flag("--annihilate", args.annihilate, "annihilate at --path (fock)");
        sub->add_option("--type", args.type, "fermion|boson|composite");
        sub->add_option("--qn", args.qns, "quantum number, integer or num/den (repeatable)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, args);
    } catch (const ParseError& e) {
        std::cerr << "error: ParseError: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: ValidationError: " << e.what() << "\n";
        return 1;
    } catch (const ContractViolation& e) {
        std::cerr << "error: ContractViolation: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 3;
    }
}
