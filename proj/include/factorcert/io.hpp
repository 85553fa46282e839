#ifndef FACTORCERT_IO_HPP
#define FACTORCERT_IO_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "factorcert/certificates.hpp"
#include "factorcert/channel.hpp"
#include "factorcert/free_group.hpp"

namespace factorcert {

// Flat machine-readable result document; field order is the emission order.
using ReportValue = std::variant<bool, long long, double, std::string>;

struct Report {
    std::vector<std::pair<std::string, ReportValue>> fields;
    Report& add(std::string key, ReportValue value) {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

// Versioned wrapper around every serialized object. Unknown kinds, unknown
// fields, and version mismatches are rejected, never guessed.
struct DocumentEnvelope {
    std::string kind; // channel | mixture-cert | matrix-cert | direct-sum-cert | fg-witness | report
    std::variant<QuantumChannel, RationalMixtureCert, MatrixFactorizationCert,
                 DirectSumFactorizationCert, FreeGroupWitness, Report>
        payload;
};

DocumentEnvelope make_document(QuantumChannel t);
DocumentEnvelope make_document(RationalMixtureCert c);
DocumentEnvelope make_document(MatrixFactorizationCert c);
DocumentEnvelope make_document(DirectSumFactorizationCert c);
DocumentEnvelope make_document(FreeGroupWitness w);
DocumentEnvelope make_document(Report r);

// Strict parse: complex numbers as [re, im], rationals as exact strings,
// matrices as {"rows","cols","data"}. Certificates are shape-validated on the
// way in; dimension bounds come from lim. Syntax errors carry a byte offset.
DocumentEnvelope parse_document(const std::string& text, const Limits& lim = {});

// Deterministic serialization: fixed key order, floats at 17 significant
// digits (always spelled as floats). parse of the output reproduces the input
// data model byte-for-byte on re-emission.
std::string emit_document(const DocumentEnvelope& doc);

} // namespace factorcert
#endif
