// covering-lab: command-line front end for the covering/complex toolkit.
// Verbs: the eight built-in scenarios, plus io utilities (dataset export,
// graph info, DOT conversion, covering checks, gluing systems, counting
// certificates, bounded counterexample search).
// Exit codes: 0 pass, 1 check failure, 2 usage/input error, 3 size-guard abort.

#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "covlab/complexes.hpp"
#include "covlab/covering.hpp"
#include "covlab/gluing.hpp"
#include "covlab/io.hpp"
#include "covlab/iso.hpp"
#include "covlab/pieces.hpp"
#include "covlab/scenarios.hpp"
#include "covlab/walls.hpp"

using namespace covlab;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::map<std::string, GraphPtr> builtin_graphs() {
    PieceTemplate t4 = sec4_template();
    PieceTemplate t5 = sec5_template();
    return {
        {"sec4-piece", t4.piece}, {"sec4-y1", t4.y1}, {"sec4-y2", t4.y2},
        {"sec4-x1", t4.x1},       {"sec4-x2", t4.x2}, {"sec5-piece", t5.piece},
        {"sec5-y1", t5.y1},       {"sec5-x1", t5.x1}, {"sec5-x2", t5.x2},
        {"wise-skeleton", wise_complex().skeleton},
    };
}

std::string certificate_json(const CountingCertificate& c) {
    nlohmann::ordered_json j;
    j["variables"] = c.variables;
    j["equations"] = nlohmann::ordered_json::array();
    for (const auto& eq : c.equations) {
        nlohmann::ordered_json je;
        je["coeffs"] = eq.coeffs;
        je["tag"] = eq.tag;
        j["equations"].push_back(je);
    }
    j["conclusion"] = c.only_zero ? "only-zero" : "feasible";
    if (!c.only_zero) {
        nlohmann::ordered_json w;
        for (std::size_t i = 0; i < c.variables.size() && i < c.witness.size(); ++i)
            w[c.variables[i]] = c.witness[i];
        j["witness"] = w;
    }
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering-lab: finite graph coverings, squared complexes, "
                 "piece assemblies, gluing equations, and wall spaces"};
    app.require_subcommand(1);

    ScenarioOptions opt;
    std::string format = "text";
    std::string out_path;
    std::string scenario_to_run;

    for (const std::string& name : scenario_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the '" + name + "' scenario");
        sub->add_option("--radius", opt.radius, "truncation radius");
        sub->add_option("--max-pieces", opt.max_pieces, "search bound (copies of the piece)");
        sub->add_option("--bound", opt.bound, "wall diameter bound");
        sub->add_option("--seed", opt.seed, "seed for randomized checks");
        sub->add_option("--format", format, "output format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("-o,--output", out_path, "write the report to a file");
        sub->callback([&, name] { scenario_to_run = name; });
    }

    // dataset: export a built-in graph
    std::string dataset_name;
    bool dataset_list = false;
    CLI::App* dataset = app.add_subcommand("dataset", "export a built-in graph as JSON");
    dataset->add_option("name", dataset_name, "dataset name");
    dataset->add_flag("--list", dataset_list, "list available datasets");
    dataset->add_option("--format", format, "output format: json|dot")
        ->check(CLI::IsMember({"json", "dot"}));
    dataset->add_option("-o,--output", out_path, "output file");

    // info: load a graph file and summarize it
    std::string info_path;
    CLI::App* info = app.add_subcommand("info", "validate and summarize a graph file");
    info->add_option("file", info_path, "graph JSON file")->required();

    // convert: graph JSON -> JSON (normalized) or DOT
    std::string convert_path;
    CLI::App* convert = app.add_subcommand("convert", "re-emit a graph as JSON or DOT");
    convert->add_option("file", convert_path, "graph JSON file")->required();
    convert->add_option("--format", format, "output format: json|dot")
        ->check(CLI::IsMember({"json", "dot"}));
    convert->add_option("-o,--output", out_path, "output file");

    // check-covering: verify a morphism file as a covering map
    std::string cov_src, cov_dst, cov_map;
    CLI::App* check = app.add_subcommand("check-covering",
                                         "verify that a morphism file is a covering map");
    check->add_option("--src", cov_src, "source graph JSON")->required();
    check->add_option("--dst", cov_dst, "target graph JSON")->required();
    check->add_option("--map", cov_map, "morphism JSON")->required();

    // gluing-system: derive and solve the piece/face system
    int gluing_target = 2;
    CLI::App* gluing = app.add_subcommand("gluing-system",
                                          "derive and solve the gluing equations");
    gluing->add_option("--target", gluing_target, "target graph: 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    gluing->add_option("-o,--output", out_path, "output file");

    // certificate: emit a counting certificate
    std::string cert_name;
    CLI::App* cert = app.add_subcommand("certificate",
                                        "emit a counting certificate as JSON");
    cert->add_option("name", cert_name, "example-4-1 | sec4 | sec5 | sec5-derived")
        ->required()
        ->check(CLI::IsMember({"example-4-1", "sec4", "sec5", "sec5-derived"}));
    cert->add_option("-o,--output", out_path, "output file");

    // search: bounded counterexample search from a descriptor file
    std::string search_path;
    CLI::App* search = app.add_subcommand(
        "search", "bounded counterexample search from a descriptor "
                  "{\"template\":\"sec4\"|\"sec5\",\"R\":int,\"N\":int}");
    search->add_option("file", search_path, "descriptor JSON file")->required();
    search->add_option("-o,--output", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!scenario_to_run.empty()) {
            ScenarioReport rep = run_scenario(scenario_to_run, opt);
            emit(format == "json" ? report_json(rep) : report_text(rep), out_path);
            return rep.passed() ? 0 : 1;
        }

        if (*dataset) {
            auto data = builtin_graphs();
            if (dataset_list || dataset_name.empty()) {
                for (const auto& [n, g] : data) std::cout << n << "\n";
                return dataset_name.empty() && !dataset_list ? 2 : 0;
            }
            auto it = data.find(dataset_name);
            if (it == data.end()) {
                std::cerr << "unknown dataset: " << dataset_name << "\n";
                return 2;
            }
            emit(format == "dot" ? graph_to_dot(*it->second) : graph_to_json(*it->second),
                 out_path);
            return 0;
        }

        if (*info) {
            Graph g = graph_from_json(read_file(info_path));
            ValidationReport rep = validate(g);
            std::cout << "vertices: " << g.num_vertices() << "\n"
                      << "edges: " << g.num_edges() << "\n"
                      << "components: " << g.num_components() << "\n"
                      << "euler characteristic: " << g.euler_characteristic() << "\n"
                      << "valid: " << (rep.valid() ? "yes" : "no") << "\n";
            for (const std::string& v : rep.violations) std::cout << "  " << v << "\n";
            return rep.valid() ? 0 : 1;
        }

        if (*convert) {
            Graph g = graph_from_json(read_file(convert_path));
            emit(format == "dot" ? graph_to_dot(g) : graph_to_json(g), out_path);
            return 0;
        }

        if (*check) {
            auto src = std::make_shared<Graph>(graph_from_json(read_file(cov_src)));
            auto dst = std::make_shared<Graph>(graph_from_json(read_file(cov_dst)));
            Morphism m = morphism_from_json(read_file(cov_map), src, dst);
            std::string witness;
            auto cm = verify_covering(m, &witness);
            if (cm) {
                std::cout << "covering of degree " << cm->degree << "\n";
                return 0;
            }
            std::cout << "not a covering: " << witness << "\n";
            return 1;
        }

        if (*gluing) {
            PieceTemplate t = sec5_template();
            GluingSystem sys = derive_gluing_system(t, gluing_target);
            auto sol = solve_system(sys);
            nlohmann::ordered_json j = nlohmann::ordered_json::parse(gluing_system_json(sys));
            j["conclusion"] = sol.only_zero ? "only-zero" : "feasible";
            if (!sol.only_zero) {
                Weights w = weights_from_vector(sys, sol.witness);
                j["witness"] =
                    nlohmann::ordered_json::parse(weights_json(sys, w));
            }
            emit(j.dump(2) + "\n", out_path);
            return 0;
        }

        if (*cert) {
            CountingCertificate c;
            if (cert_name == "example-4-1")
                c = counting_certificate(CountingScenario::example_4_1);
            else if (cert_name == "sec4")
                c = counting_certificate(CountingScenario::sec4);
            else if (cert_name == "sec5")
                c = counting_certificate(CountingScenario::sec5);
            else
                c = derive_sec5_equations(sec5_template());
            emit(certificate_json(c), out_path);
            return 0;
        }

        if (*search) {
            auto j = nlohmann::json::parse(read_file(search_path));
            std::string which = j.value("template", "sec5");
            int R = j.value("R", 1);
            int N = j.value("N", 1);
            PieceTemplate t = which == "sec4" ? sec4_template() : sec5_template();
            Truncation tr = build_truncation(t, R);
            SearchResult sr = exhaustive_search(t, N);
            nlohmann::ordered_json out;
            out["template"] = which;
            out["R"] = R;
            out["N"] = N;
            out["truncation_vertices"] = tr.graph->num_vertices();
            out["conclusion"] = sr.found ? "counterexample" : "absent";
            out["nodes_explored"] = sr.nodes_explored;
            if (sr.found)
                out["counterexample"] =
                    nlohmann::ordered_json::parse(graph_to_json(*sr.counterexample));
            emit(out.dump(2) + "\n", out_path);
            return sr.found ? 1 : 0;
        }
    } catch (const std::length_error& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
