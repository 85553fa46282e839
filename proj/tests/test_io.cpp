#include <doctest.h>

#include <string>
#include <vector>

#include "factorcert/io.hpp"
#include "test_support.hpp"

using namespace factorcert;

namespace {

const char* kDephasingDoc =
    R"({"format_version":"1","kind":"channel","payload":{"dim":2,"kraus":[)"
    R"({"rows":2,"cols":2,"data":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]},)"
    R"({"rows":2,"cols":2,"data":[[0.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]}]}})";

std::vector<DocumentEnvelope> corpus() {
    std::vector<DocumentEnvelope> docs;

    docs.push_back(make_document(test::dephasing_channel(3)));

    const auto [wc, wu] = weyl_mixture(2);
    RationalMixtureCert mix{2, 1, {}};
    for (std::size_t i = 0; i < wc.size(); ++i) mix.terms.push_back({wc[i], wu[i]});
    docs.push_back(make_document(mix));

    ComplexMatrix diag = ComplexMatrix::identity(4);
    diag(3, 3) = Complex(-1.0, 0.0);
    docs.push_back(make_document(MatrixFactorizationCert{2, 2, diag}));

    BlockRepeatedUnitary br;
    br.base_k = 1;
    br.blocks.push_back({ComplexMatrix::identity(2), 1});
    br.blocks.push_back({test::pauli_z(), 2});
    docs.push_back(make_document(MatrixFactorizationCert{2, 3, br}));

    DirectSumFactorizationCert ds;
    ds.n = 2;
    ds.space = DirectSumSpace{{1, 1}, {Rational(1, 2), Rational(1, 2)}};
    ds.blocks = {ComplexMatrix::identity(2), test::pauli_z()};
    docs.push_back(make_document(ds));

    FreeGroupWitness fg;
    fg.coeffs = {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)};
    fg.words = {FreeWord::generator(1), FreeWord::generator(2, -1)};
    docs.push_back(make_document(fg));

    Report rep;
    rep.add("command", std::string("verify-channel"))
        .add("verdict", true)
        .add("dim", static_cast<long long>(2))
        .add("max_error", 0.1)
        .add("tol", 3.0);
    docs.push_back(make_document(rep));

    return docs;
}

} // namespace

TEST_CASE("parse reads a hand-written channel document") {
    const DocumentEnvelope doc = parse_document(kDephasingDoc);
    CHECK(doc.kind == "channel");
    const auto& t = std::get<QuantumChannel>(doc.payload);
    CHECK(t.dim == 2);
    REQUIRE(t.kraus.size() == 2);
    CHECK(t.kraus[0] == ComplexMatrix::unit(2, 0, 0));
    CHECK(t.kraus[1] == ComplexMatrix::unit(2, 1, 1));
}

TEST_CASE("syntax errors carry a byte offset") {
    const std::string text(kDephasingDoc);
    try {
        parse_document(text.substr(0, text.size() / 2));
        FAIL_CHECK("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset > 0);
    }
}

TEST_CASE("rationals normalize on the way in") {
    const std::string doc =
        R"({"format_version":"1","kind":"mixture-cert","payload":{"n":2,"k":1,"terms":[)"
        R"({"coeff":"2/6","unitary":{"rows":2,"cols":2,"data":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]}},)"
        R"({"coeff":"2/3","unitary":{"rows":2,"cols":2,"data":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[-1.0,0.0]]}}]}})";
    const DocumentEnvelope env = parse_document(doc);
    const auto& cert = std::get<RationalMixtureCert>(env.payload);
    CHECK(cert.terms[0].coeff == Rational(1, 3));
    CHECK(emit_document(env).find("\"1/3\"") != std::string::npos);
}

TEST_CASE("serialization round-trips byte for byte") {
    for (const DocumentEnvelope& doc : corpus()) {
        const std::string first = emit_document(doc);
        CHECK(emit_document(doc) == first); // deterministic
        const std::string second = emit_document(parse_document(first));
        CHECK(second == first);
        CHECK(first.back() == '\n');
    }
}

TEST_CASE("structured unitaries keep their form through the format") {
    const std::string text = emit_document(corpus()[3]);
    CHECK(text.find("\"block_repeated\"") != std::string::npos);
    const auto& cert = std::get<MatrixFactorizationCert>(parse_document(text).payload);
    const auto& br = std::get<BlockRepeatedUnitary>(cert.unitary);
    CHECK(br.base_k == 1); // inferred from block dimension / n
    CHECK(br.blocks[1].multiplicity == 2);

    const std::string dense_text = emit_document(corpus()[2]);
    CHECK(dense_text.find("\"dense\"") != std::string::npos);
}

TEST_CASE("floats stay floats") {
    Report rep;
    rep.add("whole", 3.0).add("tiny", 0.1).add("count", static_cast<long long>(3));
    const std::string text = emit_document(make_document(rep));
    CHECK(text.find("\"whole\":3.0") != std::string::npos);
    CHECK(text.find("\"count\":3,") == std::string::npos); // count is last; check raw below
    CHECK(text.find("\"count\":3}") != std::string::npos);

    const auto& parsed = std::get<Report>(parse_document(text).payload);
    REQUIRE(parsed.fields.size() == 3);
    CHECK(std::get<double>(parsed.fields[0].second) == 3.0);
    CHECK(std::get<double>(parsed.fields[1].second) == 0.1);
    CHECK(std::get<long long>(parsed.fields[2].second) == 3);
}

TEST_CASE("strict schema") {
    CHECK_THROWS_AS(parse_document("[1,2,3]"), ParseError);
    CHECK_THROWS_AS(parse_document(R"({"format_version":"2","kind":"report","payload":{}})"),
                    ParseError);
    CHECK_THROWS_AS(parse_document(R"({"format_version":"1","kind":"sonnet","payload":{}})"),
                    ParseError);
    CHECK_THROWS_AS(parse_document(R"({"format_version":"1","payload":{}})"), ParseError);
    CHECK_THROWS_AS(
        parse_document(R"({"format_version":"1","kind":"report","payload":{},"extra":1})"),
        ParseError);

    // Unknown payload fields are rejected, not ignored.
    std::string doc(kDephasingDoc);
    doc.insert(doc.find("\"dim\""), "\"note\":\"x\",");
    CHECK_THROWS_AS(parse_document(doc), ParseError);
}

TEST_CASE("malformed payloads") {
    const char* bad_complex =
        R"({"format_version":"1","kind":"channel","payload":{"dim":1,"kraus":[)"
        R"({"rows":1,"cols":1,"data":[1.0]}]}})";
    CHECK_THROWS_AS(parse_document(bad_complex), ParseError);

    const char* triple =
        R"({"format_version":"1","kind":"channel","payload":{"dim":1,"kraus":[)"
        R"({"rows":1,"cols":1,"data":[[1.0,0.0,0.0]]}]}})";
    CHECK_THROWS_AS(parse_document(triple), ParseError);

    const char* short_data =
        R"({"format_version":"1","kind":"channel","payload":{"dim":2,"kraus":[)"
        R"({"rows":2,"cols":2,"data":[[1.0,0.0]]}]}})";
    CHECK_THROWS_AS(parse_document(short_data), ParseError);

    const char* bad_word =
        R"({"format_version":"1","kind":"fg-witness","payload":{"terms":[)"
        R"({"matrix":{"rows":1,"cols":1,"data":[[1.0,0.0]]},"word":"q7"}]}})";
    CHECK_THROWS_AS(parse_document(bad_word), ParseError);

    const char* misaligned =
        R"({"format_version":"1","kind":"matrix-cert","payload":{"n":2,"ancilla_dim":3,)"
        R"("unitary":{"block_repeated":[{"unitary":{"rows":3,"cols":3,"data":[)"
        R"([1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0])"
        R"(]},"multiplicity":1}]}}})";
    CHECK_THROWS_AS(parse_document(misaligned), ParseError);
}

TEST_CASE("dimension and multiplicity bounds") {
    Limits small;
    small.max_dim = 4;
    const char* wide =
        R"({"format_version":"1","kind":"channel","payload":{"dim":8,"kraus":[)"
        R"({"rows":8,"cols":8,"data":[]}]}})";
    CHECK_THROWS_AS(parse_document(wide, small), LimitError); // bound checked at the dim field
    CHECK_THROWS_AS(parse_document(wide), ParseError);        // within bounds, the data is short

    // n and k fit individually but the product does not.
    Limits five;
    five.max_dim = 5;
    const char* product =
        R"({"format_version":"1","kind":"mixture-cert","payload":{"n":3,"k":2,"terms":[]}})";
    CHECK_THROWS_AS(parse_document(product, five), LimitError);

    Limits lcm2;
    lcm2.max_lcm = 2;
    std::string stacked =
        R"({"format_version":"1","kind":"matrix-cert","payload":{"n":1,"ancilla_dim":3,)"
        R"("unitary":{"block_repeated":[)";
    for (int i = 0; i < 3; ++i) {
        if (i) stacked += ',';
        stacked += R"({"unitary":{"rows":1,"cols":1,"data":[[1.0,0.0]]},"multiplicity":1})";
    }
    stacked += "]}}}";
    CHECK_NOTHROW(parse_document(stacked));
    CHECK_THROWS_AS(parse_document(stacked, lcm2), LimitError);
}
