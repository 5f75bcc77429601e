#include <doctest.h>

#include "pschur/io.hpp"
#include "test_support.hpp"

using namespace pschur;

namespace {

std::string canonical(const std::string& text) {
    return serialize_instance(parse_instance(text));
}

} // namespace

TEST_CASE("instance files parse and serialize canonically") {
    const char* coeffs = R"({"kind":"coeffs","backend":"exact","coeffs":["2","-3","1/2+1/3i"]})";
    const InstanceFile f = parse_instance(coeffs);
    CHECK(f.kind == InstanceKind::Coeffs);
    CHECK(f.backend == Backend::Exact);
    REQUIRE(f.exact_seq.size() == 3);
    CHECK(f.exact_seq[2] == testsupport::gri(1, 2, 1, 3));
    CHECK(canonical(coeffs) == canonical(canonical(coeffs)));

    const char* matrix = R"({"kind":"matrix","backend":"exact","entries":[["1","2"],["2","1"]]})";
    const InstanceFile m = parse_instance(matrix);
    CHECK(m.exact_matrix(1, 0) == testsupport::gr(2));
    CHECK(canonical(matrix) == canonical(canonical(matrix)));

    const char* interp =
        R"({"kind":"interpolation","backend":"float","points":["0","0.5"],"A":["1","1"],"B":["0","0.5"],"base_point":"0"})";
    const InstanceFile ii = parse_instance(interp);
    CHECK(ii.interpolation.base_index == 0);
    CHECK(ii.interpolation.points[1] == cdouble(0.5, 0.0));
    CHECK(canonical(interp) == canonical(canonical(interp)));

    const char* sample =
        R"({"kind":"kernel_sample","backend":"float","points":["0","0.5"],"values":["0","0.25"]})";
    CHECK(canonical(sample) == canonical(canonical(sample)));
}

TEST_CASE("instance parse failures") {
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"coeffs"})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"widget","backend":"exact"})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"kind":"coeffs","backend":"exact","coeffs":[1]})"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_instance(
            R"({"kind":"interpolation","backend":"exact","points":["0"],"A":["1"],"B":["0"],"base_point":"0"})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_instance(
            R"({"kind":"interpolation","backend":"float","points":["0"],"A":["1"],"B":["0"],"base_point":"0.5"})"),
        ParseError);
}

TEST_CASE("run records round-trip") {
    RunRecord record;
    record.command = "classify --nu 1 file.json";
    record.input_digest = digest_hex("payload");
    record.version = kVersion;
    record.seed = 42;
    record.outputs = "{\n}\n";
    record.timing_ms = 1.25;

    const RunRecord back = parse_run_record(serialize_run_record(record));
    CHECK(back.command == record.command);
    CHECK(back.input_digest == record.input_digest);
    CHECK(back.seed == record.seed);
    CHECK(back.outputs == record.outputs);

    CHECK(digest_hex("payload") == digest_hex("payload"));
    CHECK(digest_hex("payload") != digest_hex("payloae"));
}
