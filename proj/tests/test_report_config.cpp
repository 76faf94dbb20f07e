#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "vpl/config.hpp"
#include "vpl/report.hpp"
#include "vpl/rng.hpp"

using namespace vpl;

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    const double v = 5.3471075307174685;
    CHECK(std::stod(format_double(v)) == v); // round-trips exactly
}

TEST_CASE("csv escaping follows RFC 4180") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("CsvWriter emits CRLF rows") {
    std::ostringstream out;
    CsvWriter csv(out);
    csv.row({"a", "b,c"});
    csv.row({"1", "2"});
    CHECK(out.str() == "a,\"b,c\"\r\n1,2\r\n");
}

TEST_CASE("empty report gives a header-only file") {
    std::ostringstream out;
    CsvWriter csv(out);
    csv.row({"x", "Q", "lhs"});
    CHECK(out.str() == "x,Q,lhs\r\n");
}

TEST_CASE("identical rows are byte-identical across writers") {
    const std::vector<std::string> row{"1024", format_double(3.25),
                                       format_double(1e-9)};
    std::ostringstream a, b;
    CsvWriter(a).row(row);
    CsvWriter(b).row(row);
    CHECK(a.str() == b.str());
}

TEST_CASE("1000 seeded rows are byte-stable across writers") {
    auto render = [] {
        std::ostringstream out;
        CsvWriter csv(out);
        const vpl::CounterRng rng(4, 0);
        for (int i = 0; i < 1000; ++i) {
            csv.row({std::to_string(i), format_double(rng.normal(i + 1)),
                     format_double(rng.uniform01(i + 1))});
        }
        return out.str();
    };
    const std::string a = render();
    const std::string b = render();
    CHECK(a == b);
    CHECK(a.size() > 1000);
}

TEST_CASE("RunConfig round-trips through JSON") {
    RunConfig cfg;
    cfg.command = "bdh";
    cfg.x = 1234.5;
    cfg.Q = 77.0;
    cfg.r = 2.5;
    cfg.q = 15;
    cfg.a = 4;
    cfg.seed = 99;
    cfg.theorem = "1.5";
    cfg.weights = "psi";
    cfg.out = "report.csv";
    cfg.primitive_only = true;

    nlohmann::json j = cfg;
    const RunConfig back = j.get<RunConfig>();
    nlohmann::json j2 = back;
    CHECK(j == j2);
    CHECK(back.x == cfg.x);
    CHECK(back.theorem == cfg.theorem);
    CHECK(back.primitive_only == cfg.primitive_only);
}

TEST_CASE("RunConfig validate rejects zero caps") {
    RunConfig cfg;
    cfg.limit = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("partial JSON only overrides present keys") {
    RunConfig cfg;
    cfg.x = 10.0;
    cfg.theorem = "1.2";
    const auto j = nlohmann::json::parse(R"({"x": 55.0})");
    from_json(j, cfg);
    CHECK(cfg.x == 55.0);
    CHECK(cfg.theorem == "1.2");
}
