#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "lamstd/cli.hpp"
#include "lamstd/enumerate.hpp"
#include "lamstd/syntax.hpp"
#include "lamstd/term.hpp"
#include "lamstd/trace_io.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace lamstd;

namespace {
Term v(Var n) { return Term::variable(n); }
Term ap(Term f, Term a) { return Term::application(std::move(f), std::move(a)); }
Term ab(Var x, Term b) { return Term::abstraction(x, std::move(b)); }

std::vector<std::size_t> indices_of(const ReductionTrace& t) {
    std::vector<std::size_t> out;
    for (const TraceStep& s : t.steps)
        if (s.kind == TraceStep::Kind::beta) out.push_back(s.index);
    return out;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p;
}
}  // namespace

TEST_CASE("parse_term") {
    CHECK(parse_term("x0") == v(0));
    CHECK(parse_term("\\x0. x0 x1") == ab(0, ap(v(0), v(1))));
    CHECK(parse_term("(\\x0. x0) x1 x2") == ap(ap(ab(0, v(0)), v(1)), v(2)));
    CHECK(parse_term("λx0. x0") == ab(0, v(0)));
    CHECK(parse_term("  x3  ") == v(3));
    CHECK(parse_term("\\x0. \\x1. x0") == ab(0, ab(1, v(0))));
    CHECK(parse_term("x0 (x1 x2)") == ap(v(0), ap(v(1), v(2))));
    CHECK(parse_term("x18446744073709551615") == v(UINT64_MAX));
}

TEST_CASE("parse errors carry positions") {
    auto position_of = [](const std::string& text) -> std::size_t {
        try {
            parse_term(text);
        } catch (const ParseError& e) {
            return e.position;
        }
        return SIZE_MAX;
    };
    CHECK(position_of("") == 0);
    CHECK(position_of("(x0") == 3);
    CHECK(position_of("x0)") == 2);
    CHECK(position_of("x") == 1);
    CHECK(position_of("\\x0 x1") == 4);
    CHECK(position_of("y0") == 0);
    CHECK_THROWS_AS(parse_term("x99999999999999999999"), ParseError);

    try {
        parse_term("(x0");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) == "parse error at 3: expected ')'");
    }
}

TEST_CASE("print_term") {
    CHECK(print_term(v(0)) == "x0");
    CHECK(print_term(ap(v(0), ap(v(1), v(2)))) == "x0 (x1 x2)");
    CHECK(print_term(ab(0, ap(v(0), v(0)))) == "\\x0. x0 x0");
    CHECK(print_term(ap(ap(v(0), v(1)), v(2))) == "x0 x1 x2");
    CHECK(print_term(ap(ab(0, v(0)), v(1))) == "(\\x0. x0) x1");
    CHECK(print_term(ap(v(0), ab(1, v(1)))) == "x0 (\\x1. x1)");
    CHECK(print_term(ab(0, ab(1, v(0)))) == "\\x0. \\x1. x0");
}

TEST_CASE("parse and print round-trip") {
    gen::Rng rng(2026'50);
    for (int i = 0; i < 3000; ++i) {
        Term m = gen::random_term(rng, gen::pick(rng, 1, 12));
        std::string text = print_term(m);
        REQUIRE(parse_term(text) == m);
        REQUIRE(print_term(parse_term(text)) == text);
    }
    for (const Term& m : gen::all_terms(6, 2)) REQUIRE(parse_term(print_term(m)) == m);
}

TEST_CASE("trace documents round-trip") {
    gen::Rng rng(2026'51);
    for (int i = 0; i < 500; ++i) {
        Term m = gen::random_term(rng, gen::pick(rng, 1, 7), 3);
        ReductionTrace t = gen::random_trace(rng, m, gen::pick(rng, 0, 4), 20);
        TraceDocument doc = document_from_json(trace_to_json(t));
        REQUIRE(doc.trace == t);
        REQUIRE_FALSE(doc.bound.has_value());
    }
}

TEST_CASE("sequence documents carry the bound") {
    ReductionTrace base{ap(ab(0, v(0)), v(1)), {TraceStep::beta(0, v(1))}};
    StandardSequence s = standardize(base);
    nlohmann::json j = sequence_to_json(s);
    REQUIRE(j.contains("bound"));
    TraceDocument doc = document_from_json(j);
    REQUIRE(doc.bound == s.bound);
    StandardSequence back = document_to_sequence(doc);
    CHECK(back.start == s.start);
    CHECK(back.bound == s.bound);
    CHECK(validate_standard(back));
}

TEST_CASE("document parsing is strict") {
    auto reject = [](const std::string& text) {
        CHECK_THROWS_AS(document_from_string(text), InvalidTrace);
    };
    reject("not json at all");
    reject("[]");
    reject(R"({"steps": []})");
    reject(R"({"start": "x0"})");
    reject(R"({"start": "x0", "steps": [], "extra": 1})");
    reject(R"({"start": "x0", "steps": {}})");
    reject(R"({"start": 3, "steps": []})");
    reject(R"({"start": "x0", "steps": [{"result": "x0"}]})");
    reject(R"({"start": "x0", "steps": [{"kind": "gamma", "result": "x0"}]})");
    reject(R"({"start": "x0", "steps": [{"kind": "beta", "result": "x0"}]})");
    reject(R"({"start": "x0", "steps": [{"kind": "beta", "index": -1, "result": "x0"}]})");
    reject(R"({"start": "x0", "steps": [{"kind": "beta", "index": 0, "result": "x0", "x": 0}]})");
    reject(R"({"start": "x0", "steps": [{"kind": "alpha", "index": 0, "result": "x0"}]})");
    reject(R"({"start": "x0", "steps": [], "bound": "0"})");
    CHECK_THROWS_AS(document_from_string(R"({"start": "bogus", "steps": []})"), ParseError);

    TraceDocument ok = document_from_string(R"({"start": "x0", "steps": [], "bound": 0})");
    CHECK(ok.bound == 0);
    CHECK(ok.trace.start == v(0));
}

TEST_CASE("enumerate_traces") {
    auto only = enumerate_traces(ab(0, v(0)), 3);
    REQUIRE(only.size() == 1);
    CHECK(only[0].steps.empty());

    auto two = enumerate_traces(ap(ab(0, v(0)), v(1)), 2);
    REQUIRE(two.size() == 2);
    CHECK(indices_of(two[0]).empty());
    CHECK(indices_of(two[1]) == std::vector<std::size_t>{0});

    Term start = ap(ab(0, v(1)), ap(ab(2, v(2)), v(3)));
    auto all = enumerate_traces(start, 2);
    std::vector<std::vector<std::size_t>> lists;
    for (const ReductionTrace& t : all) lists.push_back(indices_of(t));
    std::vector<std::vector<std::size_t>> expected{{}, {0}, {1}, {1, 0}};
    CHECK(lists == expected);
    for (const ReductionTrace& t : all) REQUIRE(validate_trace(t));
}

TEST_CASE("enumerate_traces matches an independent recomputation on small terms") {
    // build the index lists directly, then replay them; same set, same order
    std::function<void(const Term&, std::size_t, std::vector<std::size_t>&,
                       std::vector<std::vector<std::size_t>>&)>
        walk = [&](const Term& cur, std::size_t left, std::vector<std::size_t>& path,
                   std::vector<std::vector<std::size_t>>& out) {
            out.push_back(path);
            if (left == 0) return;
            std::size_t total = count_redexes(cur);
            for (std::size_t n = 0; n < total; ++n) {
                path.push_back(n);
                walk(contract_at(cur, n), left - 1, path, out);
                path.pop_back();
            }
        };
    for (const Term& m : gen::all_terms(6, 2)) {
        std::vector<std::vector<std::size_t>> want;
        std::vector<std::size_t> path;
        walk(m, 3, path, want);
        auto got = enumerate_traces(m, 3);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            REQUIRE(indices_of(got[i]) == want[i]);
            REQUIRE(validate_trace(got[i]));
            REQUIRE(got[i].start == m);
        }
    }
}

TEST_CASE("enumeration cap raises a resource error") {
    Term start = ap(ab(0, v(1)), ap(ab(2, v(2)), v(3)));
    CHECK_THROWS_AS(enumerate_traces(start, 2, 3), ResourceLimit);
    CHECK_NOTHROW(enumerate_traces(start, 2, 4));
}

TEST_CASE("trace cap environment override") {
    unsetenv("LAMSTD_FRONTIER_CAP");
    CHECK(trace_cap_from_env() == default_trace_cap);
    setenv("LAMSTD_FRONTIER_CAP", "7", 1);
    CHECK(trace_cap_from_env() == 7);
    setenv("LAMSTD_FRONTIER_CAP", "junk", 1);
    CHECK(trace_cap_from_env() == default_trace_cap);
    unsetenv("LAMSTD_FRONTIER_CAP");
}

TEST_CASE("find_trace") {
    Term m = ap(ab(0, v(0)), v(1));
    auto self = find_trace(m, m, 3);
    REQUIRE(self);
    CHECK(self->steps.empty());

    auto direct = find_trace(m, v(1), 3);
    REQUIRE(direct);
    CHECK(indices_of(*direct) == std::vector<std::size_t>{0});

    CHECK_FALSE(find_trace(m, v(9), 3).has_value());

    // alpha-equivalent target: found in the second pass with a closing step
    Term id_term = ap(ab(0, v(0)), ab(1, v(1)));
    auto renamed = find_trace(id_term, ab(5, v(5)), 3);
    REQUIRE(renamed);
    REQUIRE_FALSE(renamed->steps.empty());
    CHECK(renamed->steps.back().kind == TraceStep::Kind::alpha);
    CHECK(renamed->end() == ab(5, v(5)));
    REQUIRE(validate_trace(*renamed));
}

TEST_CASE("cli parse, redexes, step, alpha-eq") {
    CliResult r = run_cli({"parse", "λx0. x0"});
    CHECK(r.code == 0);
    CHECK(r.out == "\\x0. x0\n");

    CHECK(run_cli({"redexes", "(\\x0. x0) x1"}).out == "1\n");
    CHECK(run_cli({"step", "--at", "0", "(\\x0. x0) x1"}).out == "x1\n");

    CliResult bad = run_cli({"step", "--at", "4", "(\\x0. x0) x1"});
    CHECK(bad.code == 1);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("out of range") != std::string::npos);

    CHECK(run_cli({"alpha-eq", "\\x0. x0", "\\x5. x5"}).out == "true\n");
    CHECK(run_cli({"alpha-eq", "x0", "x1"}).out == "false\n");
    CHECK(run_cli({"alpha-eq", "x0", "x1"}).code == 0);

    CliResult syntax = run_cli({"parse", "(x0"});
    CHECK(syntax.code == 1);
    CHECK(syntax.err == "parse error at 3: expected ')'\n");

    CliResult nocmd = run_cli({});
    CHECK(nocmd.code == 1);

    CliResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("parse") != std::string::npos);
}

TEST_CASE("cli normalize") {
    CliResult done = run_cli({"normalize", "(\\x0. x0) x1"});
    CHECK(done.code == 0);
    TraceDocument doc = document_from_string(done.out);
    CHECK(doc.trace.start == ap(ab(0, v(0)), v(1)));
    CHECK(doc.trace.end() == v(1));

    std::string omega = "(\\x1. x1 x1) (\\x1. x1 x1)";
    CliResult spin = run_cli({"normalize", "--fuel", "5", omega});
    CHECK(spin.code == 2);
    CHECK(spin.err == "fuel exhausted after 5 steps\n");
    TraceDocument partial = document_from_string(spin.out);
    CHECK(partial.trace.beta_count() == 5);
}

TEST_CASE("cli standardize and verify") {
    Term start = ap(ab(0, v(1)), ap(ab(2, v(2)), v(3)));
    Term mid = contract_at(start, 1);
    ReductionTrace one_zero{start, {TraceStep::beta(1, mid), TraceStep::beta(0, contract_at(mid, 0))}};
    auto trace_path = write_temp("lamstd_test_trace.json", trace_to_json(one_zero).dump());

    CliResult verified = run_cli({"verify", trace_path.string()});
    CHECK(verified.code == 0);
    CHECK(verified.out == "ok\n");

    CliResult nonstd = run_cli({"verify", "--standard", trace_path.string()});
    CHECK(nonstd.code == 1);
    CHECK(nonstd.err == "non-decreasing index violated at step 2\n");

    CliResult std_out = run_cli({"standardize", "--trace", trace_path.string()});
    REQUIRE(std_out.code == 0);
    TraceDocument doc = document_from_string(std_out.out);
    REQUIRE(doc.bound.has_value());
    CHECK(indices_of(doc.trace) == std::vector<std::size_t>{0});
    CHECK(doc.trace.end() == v(1));

    auto std_path = write_temp("lamstd_test_standard.json", std_out.out);
    CliResult accepted = run_cli({"verify", "--standard", std_path.string()});
    CHECK(accepted.code == 0);
    CHECK(accepted.out == "ok\n");

    CliResult searched = run_cli({"standardize", "--from", print_term(start), "--to", "x1", "--depth", "3"});
    REQUIRE(searched.code == 0);
    TraceDocument found = document_from_string(searched.out);
    CHECK(found.trace.start == start);
    CHECK(found.trace.end() == v(1));
    CHECK(validate_standard(document_to_sequence(found)));

    CliResult missing = run_cli({"standardize", "--from", "x0", "--to", "x1", "--depth", "3"});
    CHECK(missing.code == 1);
    CHECK(missing.err == "no trace found within depth 3\n");

    CliResult broken = run_cli({"verify", "/nonexistent/lamstd.json"});
    CHECK(broken.code == 1);
    CHECK(broken.err.find("cannot read file") != std::string::npos);

    auto bad_path = write_temp("lamstd_test_bad.json", R"({"start": "x0", "steps": [{"kind": "beta", "index": 0, "result": "x0"}]})");
    CliResult bad = run_cli({"verify", bad_path.string()});
    CHECK(bad.code == 1);
    CHECK(bad.err == "beta step 1 index 0 out of range\n");

    std::filesystem::remove(trace_path);
    std::filesystem::remove(std_path);
    std::filesystem::remove(bad_path);
}

TEST_CASE("cli oracle") {
    CliResult r = run_cli({"oracle", "--depth", "2", "(\\x0. x1) ((\\x2. x2) x3)"});
    REQUIRE(r.code == 0);
    nlohmann::json arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 4);
    for (const auto& j : arr) {
        TraceDocument doc = document_from_json(j);
        REQUIRE(validate_trace(doc.trace));
    }

    setenv("LAMSTD_FRONTIER_CAP", "2", 1);
    CliResult capped = run_cli({"oracle", "--depth", "2", "(\\x0. x1) ((\\x2. x2) x3)"});
    CHECK(capped.code == 2);
    CHECK(capped.err.find("cap") != std::string::npos);
    unsetenv("LAMSTD_FRONTIER_CAP");
}
