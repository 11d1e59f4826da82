// cli.hpp: the lamstd command line, callable in-process for tests.
//
// Exit codes: 0 success, 1 domain errors (bad syntax, invalid traces, bad
// indices, missing files), 2 resource limits (fuel or enumeration cap).
// Every failure prints a single diagnostic line on the error stream.
#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lamstd/enumerate.hpp"
#include "lamstd/trace_io.hpp"

namespace lamstd::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lambda term standardization toolkit"};
    app.require_subcommand(1);

    std::string term_text, term_text_b, file_path, from_text, to_text;
    std::size_t at_index = 0, fuel = 10000, depth = 0;
    bool standard = false;

    CLI::App* cmd_parse = app.add_subcommand("parse", "parse a term and print its canonical form");
    cmd_parse->add_option("term", term_text, "term")->required();

    CLI::App* cmd_redexes = app.add_subcommand("redexes", "count the redexes of a term");
    cmd_redexes->add_option("term", term_text, "term")->required();

    CLI::App* cmd_step = app.add_subcommand("step", "contract the redex at a position");
    cmd_step->add_option("--at", at_index, "redex index")->required();
    cmd_step->add_option("term", term_text, "term")->required();

    CLI::App* cmd_alpha = app.add_subcommand("alpha-eq", "decide alpha-equivalence of two terms");
    cmd_alpha->add_option("left", term_text, "first term")->required();
    cmd_alpha->add_option("right", term_text_b, "second term")->required();

    CLI::App* cmd_norm = app.add_subcommand("normalize", "reduce leftmost to normal form");
    cmd_norm->add_option("--fuel", fuel, "maximum number of steps")->capture_default_str();
    cmd_norm->add_option("term", term_text, "term")->required();

    CLI::App* cmd_std = app.add_subcommand("standardize", "turn a reduction trace into a standard sequence");
    CLI::Option* opt_trace = cmd_std->add_option("--trace", file_path, "trace document to standardize");
    CLI::Option* opt_from = cmd_std->add_option("--from", from_text, "start term to search from");
    CLI::Option* opt_to = cmd_std->add_option("--to", to_text, "end term to search for");
    CLI::Option* opt_depth = cmd_std->add_option("--depth", depth, "search depth in beta steps");
    opt_trace->excludes(opt_from)->excludes(opt_to)->excludes(opt_depth);
    opt_from->needs(opt_to)->needs(opt_depth);
    opt_to->needs(opt_from);

    CLI::App* cmd_verify = app.add_subcommand("verify", "check a trace document");
    cmd_verify->add_flag("--standard", standard, "also require non-decreasing indices and bound");
    cmd_verify->add_option("file", file_path, "trace document")->required();

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "enumerate all traces up to a depth");
    cmd_oracle->add_option("--depth", depth, "maximum number of beta steps")->required();
    cmd_oracle->add_option("term", term_text, "term")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (*cmd_parse) {
            out << print_term(parse_term(term_text)) << "\n";
        } else if (*cmd_redexes) {
            out << count_redexes(parse_term(term_text)) << "\n";
        } else if (*cmd_step) {
            out << print_term(contract_at(parse_term(term_text), at_index)) << "\n";
        } else if (*cmd_alpha) {
            out << (alpha_equivalent(parse_term(term_text), parse_term(term_text_b)) ? "true" : "false")
                << "\n";
        } else if (*cmd_norm) {
            NormalizeOutcome r = normalize_leftmost(parse_term(term_text), fuel);
            out << trace_to_json(r.trace).dump() << "\n";
            if (!r.normalized) {
                err << "fuel exhausted after " << fuel << " steps\n";
                return 2;
            }
        } else if (*cmd_std) {
            ReductionTrace trace = empty_trace(Term::variable(0));
            if (opt_trace->count()) {
                trace = document_from_string(detail::read_file(file_path)).trace;
            } else if (opt_from->count()) {
                Term from = parse_term(from_text);
                Term to = parse_term(to_text);
                auto found = find_trace(from, to, depth, trace_cap_from_env());
                if (!found) {
                    err << "no trace found within depth " << depth << "\n";
                    return 1;
                }
                trace = *std::move(found);
            } else {
                err << "standardize needs --trace or --from/--to/--depth\n";
                return 1;
            }
            out << sequence_to_json(standardize(trace)).dump() << "\n";
        } else if (*cmd_verify) {
            TraceDocument doc = document_from_string(detail::read_file(file_path));
            std::optional<std::string> why =
                standard ? explain_standard_failure(document_to_sequence(doc))
                         : explain_trace_failure(doc.trace);
            if (why) {
                err << *why << "\n";
                return 1;
            }
            out << "ok\n";
        } else if (*cmd_oracle) {
            nlohmann::json arr = nlohmann::json::array();
            for (const ReductionTrace& t : enumerate_traces(parse_term(term_text), depth, trace_cap_from_env()))
                arr.push_back(trace_to_json(t));
            out << arr.dump() << "\n";
        }
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const ResourceLimit& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
}

}  // namespace lamstd::cli
