#include "factorcert/io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace factorcert {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormatVersion = "1";

// ---- emission ----------------------------------------------------------------

void append_string(std::string& s, const std::string& v) {
    s += '"';
    for (char c : v) {
        switch (c) {
        case '"': s += "\\\""; break;
        case '\\': s += "\\\\"; break;
        case '\n': s += "\\n"; break;
        case '\r': s += "\\r"; break;
        case '\t': s += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned char>(c));
                s += buf;
            } else {
                s += c;
            }
        }
    }
    s += '"';
}

void append_double(std::string& s, double v) {
    if (!std::isfinite(v)) throw Error("emit: cannot serialize a non-finite number");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string t(buf);
    // Keep floats spelled as floats so a round-trip preserves the value's type.
    if (t.find_first_of(".eE") == std::string::npos) t += ".0";
    s += t;
}

void append_complex(std::string& s, Complex z) {
    s += '[';
    append_double(s, z.real());
    s += ',';
    append_double(s, z.imag());
    s += ']';
}

void append_matrix(std::string& s, const ComplexMatrix& m) {
    s += "{\"rows\":" + std::to_string(m.rows()) + ",\"cols\":" + std::to_string(m.cols()) +
         ",\"data\":[";
    const Complex* d = m.data();
    const std::size_t count = m.rows() * m.cols();
    for (std::size_t i = 0; i < count; ++i) {
        if (i) s += ',';
        append_complex(s, d[i]);
    }
    s += "]}";
}

void append_payload(std::string& s, const QuantumChannel& t) {
    s += "{\"dim\":" + std::to_string(t.dim) + ",\"kraus\":[";
    for (std::size_t i = 0; i < t.kraus.size(); ++i) {
        if (i) s += ',';
        append_matrix(s, t.kraus[i]);
    }
    s += "]}";
}

void append_payload(std::string& s, const RationalMixtureCert& c) {
    s += "{\"n\":" + std::to_string(c.n) + ",\"k\":" + std::to_string(c.k) + ",\"terms\":[";
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        if (i) s += ',';
        s += "{\"coeff\":";
        append_string(s, c.terms[i].coeff.str());
        s += ",\"unitary\":";
        append_matrix(s, c.terms[i].unitary);
        s += '}';
    }
    s += "]}";
}

void append_payload(std::string& s, const MatrixFactorizationCert& c) {
    s += "{\"n\":" + std::to_string(c.n) + ",\"ancilla_dim\":" + std::to_string(c.ancilla_dim) +
         ",\"unitary\":{";
    if (const auto* dense = std::get_if<ComplexMatrix>(&c.unitary)) {
        s += "\"dense\":";
        append_matrix(s, *dense);
    } else {
        const auto& br = std::get<BlockRepeatedUnitary>(c.unitary);
        s += "\"block_repeated\":[";
        for (std::size_t i = 0; i < br.blocks.size(); ++i) {
            if (i) s += ',';
            s += "{\"unitary\":";
            append_matrix(s, br.blocks[i].unitary);
            s += ",\"multiplicity\":" + std::to_string(br.blocks[i].multiplicity) + '}';
        }
        s += ']';
    }
    s += "}}";
}

void append_payload(std::string& s, const DirectSumFactorizationCert& c) {
    s += "{\"n\":" + std::to_string(c.n) + ",\"space\":{\"sizes\":[";
    for (std::size_t i = 0; i < c.space.sizes.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c.space.sizes[i]);
    }
    s += "],\"weights\":[";
    for (std::size_t i = 0; i < c.space.weights.size(); ++i) {
        if (i) s += ',';
        append_string(s, c.space.weights[i].str());
    }
    s += "]},\"blocks\":[";
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
        if (i) s += ',';
        append_matrix(s, c.blocks[i]);
    }
    s += "]}";
}

void append_payload(std::string& s, const FreeGroupWitness& w) {
    s += "{\"terms\":[";
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
        if (i) s += ',';
        s += "{\"matrix\":";
        append_matrix(s, w.coeffs[i]);
        s += ",\"word\":";
        append_string(s, format_word(w.words[i]));
        s += '}';
    }
    s += "]}";
}

void append_payload(std::string& s, const Report& r) {
    s += '{';
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
        if (i) s += ',';
        append_string(s, r.fields[i].first);
        s += ':';
        const ReportValue& v = r.fields[i].second;
        if (const auto* b = std::get_if<bool>(&v)) {
            s += *b ? "true" : "false";
        } else if (const auto* n = std::get_if<long long>(&v)) {
            s += std::to_string(*n);
        } else if (const auto* d = std::get_if<double>(&v)) {
            append_double(s, *d);
        } else {
            append_string(s, std::get<std::string>(v));
        }
    }
    s += '}';
}

// ---- parsing -----------------------------------------------------------------

[[noreturn]] void schema_error(const std::string& what, const std::string& detail) {
    throw ParseError(what + ": " + detail);
}

const Json& expect_object(const Json& j, const char* what) {
    if (!j.is_object()) schema_error(what, "expected a JSON object");
    return j;
}

void check_keys(const Json& obj, std::initializer_list<const char*> keys, const char* what) {
    for (const char* key : keys) {
        if (!obj.contains(key)) schema_error(what, std::string("missing field '") + key + "'");
    }
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : keys) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) schema_error(what, "unknown field '" + item.key() + "'");
    }
}

long long expect_int(const Json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) schema_error(what, "expected an integer");
    return j.get<long long>();
}

std::size_t expect_dim(const Json& j, const char* what, const Limits& lim) {
    const long long v = expect_int(j, what);
    if (v < 1) schema_error(what, "dimension must be >= 1");
    if (static_cast<unsigned long long>(v) > lim.max_dim) {
        throw LimitError(std::string(what) + ": dimension " + std::to_string(v) +
                         " exceeds max-dim " + std::to_string(lim.max_dim));
    }
    return static_cast<std::size_t>(v);
}

double expect_number(const Json& j, const char* what) {
    if (!j.is_number()) schema_error(what, "expected a number");
    return j.get<double>();
}

std::string expect_string(const Json& j, const char* what) {
    if (!j.is_string()) schema_error(what, "expected a string");
    return j.get<std::string>();
}

const Json& expect_array(const Json& j, const char* what) {
    if (!j.is_array()) schema_error(what, "expected an array");
    return j;
}

Complex parse_complex(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) schema_error(what, "complex numbers are [re, im]");
    return Complex(expect_number(j[0], what), expect_number(j[1], what));
}

ComplexMatrix parse_matrix(const Json& j, const char* what, const Limits& lim) {
    expect_object(j, what);
    check_keys(j, {"rows", "cols", "data"}, what);
    const std::size_t rows = expect_dim(j["rows"], what, lim);
    const std::size_t cols = expect_dim(j["cols"], what, lim);
    const Json& data = expect_array(j["data"], what);
    if (data.size() != rows * cols) {
        schema_error(what, "data holds " + std::to_string(data.size()) + " entries for a " +
                               std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    ComplexMatrix m(rows, cols);
    Complex* out = m.data();
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = parse_complex(data[i], what);
    return m;
}

Rational parse_rational(const Json& j, const char* what) {
    return Rational::parse(expect_string(j, what));
}

QuantumChannel parse_channel(const Json& j, const Limits& lim) {
    const char* what = "channel";
    check_keys(j, {"dim", "kraus"}, what);
    QuantumChannel t;
    t.dim = expect_dim(j["dim"], what, lim);
    const Json& kraus = expect_array(j["kraus"], what);
    if (kraus.empty()) schema_error(what, "kraus list is empty");
    for (const Json& item : kraus) {
        ComplexMatrix a = parse_matrix(item, what, lim);
        if (a.rows() != t.dim || a.cols() != t.dim) {
            schema_error(what, "Kraus operator is " + std::to_string(a.rows()) + "x" +
                                   std::to_string(a.cols()) + " but dim is " +
                                   std::to_string(t.dim));
        }
        t.kraus.push_back(std::move(a));
    }
    return t;
}

RationalMixtureCert parse_mixture(const Json& j, const Limits& lim) {
    const char* what = "mixture-cert";
    check_keys(j, {"n", "k", "terms"}, what);
    RationalMixtureCert c;
    c.n = expect_dim(j["n"], what, lim);
    c.k = expect_dim(j["k"], what, lim);
    if (c.n * c.k > lim.max_dim) {
        throw LimitError("mixture-cert: dimension n*k = " + std::to_string(c.n * c.k) +
                         " exceeds max-dim " + std::to_string(lim.max_dim));
    }
    for (const Json& item : expect_array(j["terms"], what)) {
        expect_object(item, what);
        check_keys(item, {"coeff", "unitary"}, what);
        c.terms.push_back({parse_rational(item["coeff"], what),
                           parse_matrix(item["unitary"], what, lim)});
    }
    require_valid_shape(c);
    return c;
}

MatrixFactorizationCert parse_matrix_cert(const Json& j, const Limits& lim) {
    const char* what = "matrix-cert";
    check_keys(j, {"n", "ancilla_dim", "unitary"}, what);
    MatrixFactorizationCert c;
    c.n = expect_dim(j["n"], what, lim);
    const long long ancilla = expect_int(j["ancilla_dim"], what);
    if (ancilla < 1) schema_error(what, "ancilla_dim must be >= 1");
    c.ancilla_dim = static_cast<std::size_t>(ancilla);
    const Json& u = expect_object(j["unitary"], what);
    if (u.contains("dense")) {
        check_keys(u, {"dense"}, what);
        c.unitary = parse_matrix(u["dense"], what, lim);
    } else {
        check_keys(u, {"block_repeated"}, what);
        const Json& arr = expect_array(u["block_repeated"], what);
        if (arr.empty()) schema_error(what, "block_repeated list is empty");
        BlockRepeatedUnitary br;
        long long slots = 0;
        for (const Json& item : arr) {
            expect_object(item, what);
            check_keys(item, {"unitary", "multiplicity"}, what);
            RepeatedBlock block;
            block.unitary = parse_matrix(item["unitary"], what, lim);
            block.multiplicity = expect_int(item["multiplicity"], what);
            if (block.multiplicity < 1) schema_error(what, "multiplicity must be >= 1");
            slots += block.multiplicity;
            if (slots > lim.max_lcm) {
                throw LimitError("matrix-cert: block multiplicities total more than max-lcm " +
                                 std::to_string(lim.max_lcm));
            }
            br.blocks.push_back(std::move(block));
        }
        const std::size_t block_dim = br.blocks.front().unitary.rows();
        if (block_dim % c.n != 0) {
            schema_error(what, "block dimension " + std::to_string(block_dim) +
                                   " is not a multiple of n = " + std::to_string(c.n));
        }
        br.base_k = block_dim / c.n;
        c.unitary = std::move(br);
    }
    require_valid_shape(c);
    return c;
}

DirectSumFactorizationCert parse_direct_sum_cert(const Json& j, const Limits& lim) {
    const char* what = "direct-sum-cert";
    check_keys(j, {"n", "space", "blocks"}, what);
    DirectSumFactorizationCert c;
    c.n = expect_dim(j["n"], what, lim);
    const Json& space = expect_object(j["space"], what);
    check_keys(space, {"sizes", "weights"}, what);
    for (const Json& item : expect_array(space["sizes"], what)) {
        c.space.sizes.push_back(expect_dim(item, what, lim));
    }
    for (const Json& item : expect_array(space["weights"], what)) {
        c.space.weights.push_back(parse_rational(item, what));
    }
    for (const Json& item : expect_array(j["blocks"], what)) {
        c.blocks.push_back(parse_matrix(item, what, lim));
    }
    require_valid_shape(c);
    return c;
}

FreeGroupWitness parse_fg_witness(const Json& j, const Limits& lim) {
    const char* what = "fg-witness";
    check_keys(j, {"terms"}, what);
    FreeGroupWitness w;
    const Json& terms = expect_array(j["terms"], what);
    if (terms.empty()) schema_error(what, "terms list is empty");
    for (const Json& item : terms) {
        expect_object(item, what);
        check_keys(item, {"matrix", "word"}, what);
        ComplexMatrix m = parse_matrix(item["matrix"], what, lim);
        m.require_square(what);
        if (!w.coeffs.empty() && m.rows() != w.coeffs.front().rows()) {
            schema_error(what, "matrices have mixed dimensions");
        }
        w.coeffs.push_back(std::move(m));
        w.words.push_back(parse_word(expect_string(item["word"], what)));
    }
    return w;
}

Report parse_report(const Json& j) {
    const char* what = "report";
    Report r;
    for (const auto& item : j.items()) {
        const Json& v = item.value();
        if (v.is_boolean()) {
            r.add(item.key(), v.get<bool>());
        } else if (v.is_number_integer() || v.is_number_unsigned()) {
            r.add(item.key(), v.get<long long>());
        } else if (v.is_number_float()) {
            r.add(item.key(), v.get<double>());
        } else if (v.is_string()) {
            r.add(item.key(), v.get<std::string>());
        } else {
            schema_error(what, "field '" + item.key() + "' must be a scalar");
        }
    }
    return r;
}

} // namespace

DocumentEnvelope make_document(QuantumChannel t) { return {"channel", std::move(t)}; }
DocumentEnvelope make_document(RationalMixtureCert c) { return {"mixture-cert", std::move(c)}; }
DocumentEnvelope make_document(MatrixFactorizationCert c) { return {"matrix-cert", std::move(c)}; }
DocumentEnvelope make_document(DirectSumFactorizationCert c) {
    return {"direct-sum-cert", std::move(c)};
}
DocumentEnvelope make_document(FreeGroupWitness w) { return {"fg-witness", std::move(w)}; }
DocumentEnvelope make_document(Report r) { return {"report", std::move(r)}; }

DocumentEnvelope parse_document(const std::string& text, const Limits& lim) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("document: ") + e.what(), e.byte);
    }
    const char* what = "document";
    expect_object(root, what);
    check_keys(root, {"format_version", "kind", "payload"}, what);
    const std::string version = expect_string(root["format_version"], what);
    if (version != kFormatVersion) {
        schema_error(what, "unsupported format_version '" + version + "', expected '" +
                               kFormatVersion + "'");
    }
    const std::string kind = expect_string(root["kind"], what);
    const Json& payload = expect_object(root["payload"], what);
    DocumentEnvelope doc;
    doc.kind = kind;
    if (kind == "channel") {
        doc.payload = parse_channel(payload, lim);
    } else if (kind == "mixture-cert") {
        doc.payload = parse_mixture(payload, lim);
    } else if (kind == "matrix-cert") {
        doc.payload = parse_matrix_cert(payload, lim);
    } else if (kind == "direct-sum-cert") {
        doc.payload = parse_direct_sum_cert(payload, lim);
    } else if (kind == "fg-witness") {
        doc.payload = parse_fg_witness(payload, lim);
    } else if (kind == "report") {
        doc.payload = parse_report(payload);
    } else {
        schema_error(what, "unknown kind '" + kind + "'");
    }
    return doc;
}

std::string emit_document(const DocumentEnvelope& doc) {
    static const char* kKinds[] = {"channel",         "mixture-cert", "matrix-cert",
                                   "direct-sum-cert", "fg-witness",   "report"};
    std::string s = "{\"format_version\":\"";
    s += kFormatVersion;
    s += "\",\"kind\":\"";
    s += kKinds[doc.payload.index()];
    s += "\",\"payload\":";
    std::visit([&](const auto& payload) { append_payload(s, payload); }, doc.payload);
    s += "}\n";
    return s;
}

} // namespace factorcert
