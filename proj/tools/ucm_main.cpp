#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "render.hpp"
#include "ucm/dot.hpp"
#include "ucm/errors.hpp"
#include "ucm/importance.hpp"
#include "ucm/ingest.hpp"
#include "ucm/scenario.hpp"
#include "ucm/simulate.hpp"
#include "ucm/usage_model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
    std::string model_path;
    std::string scenarios_path;
    std::string objects_path;
    bool enumerate = false;
    int loop_bound = 1000;
};

struct Inputs {
    ucm::UcmModel model;
    ucm::ObjectModel objects;
    ucm::FlatChain chain;
};

// Parses and validates; prints issues and throws ExitWith on failure.
struct ExitWith {
    int code;
};

Inputs load_inputs(const CommonArgs& args) {
    Inputs in;
    in.model = ucm::load_model(args.model_path);
    if (!args.objects_path.empty())
        in.objects = ucm::load_object_model(args.objects_path, in.model);
    auto report = ucm::validate_model(in.model, in.objects);
    if (!report.ok()) {
        std::cerr << ucmcli::render_validation(report);
        throw ExitWith{kExitValidation};
    }
    in.chain = ucm::flatten(ucm::convert(in.model));
    return in;
}

std::vector<ucm::ScenarioDefinition> load_definitions(const CommonArgs& args, const Inputs& in,
                                                      bool required) {
    if (!args.scenarios_path.empty())
        return ucm::load_scenarios(args.scenarios_path, in.model);
    if (args.enumerate)
        return ucm::enumerate_scenarios(in.model, in.chain, args.loop_bound);
    if (required) {
        std::cerr << "error: provide --scenarios FILE or --enumerate\n";
        throw ExitWith{kExitUsage};
    }
    return {};
}

void add_common(CLI::App* cmd, CommonArgs& args, bool scenarios) {
    cmd->add_option("--model", args.model_path, "model file (JSON)")->required();
    cmd->add_option("--objects", args.objects_path, "object-model file (JSON)");
    cmd->add_option("--loop-bound", args.loop_bound, "per-state traversal bound")
        ->check(CLI::PositiveNumber);
    if (scenarios) {
        cmd->add_option("--scenarios", args.scenarios_path, "scenario definitions file (JSON)");
        cmd->add_flag("--enumerate", args.enumerate,
                      "derive scenario definitions from the model");
    }
}

ucmcli::Format parse_format(const std::string& name) {
    auto format = ucmcli::format_from_string(name);
    if (!format) {
        std::cerr << "error: unknown format '" << name << "'\n";
        throw ExitWith{kExitUsage};
    }
    return *format;
}

int run(int argc, char** argv) {
    CLI::App app{"Scenario usage-model and importance analyzer for UCM specifications"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string format_name = "text";
    int round_digits = -1;
    double overall_threshold = -1.0;
    double alt_threshold = -1.0;
    bool flat = false;
    std::string scenario_name;
    std::uint64_t seed = 0;
    int walks = 100000;

    CLI::App* validate = app.add_subcommand("validate", "check model and object-model files");
    add_common(validate, args, false);

    CLI::App* analyze = app.add_subcommand("analyze", "compute importance tables");
    add_common(analyze, args, true);
    analyze->add_option("--overall-threshold", overall_threshold,
                        "keep scenarios with importance >= R")
        ->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--alt-threshold", alt_threshold,
                        "keep scenarios whose every transition probability is >= R")
        ->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--format", format_name, "text, json, or csv");
    analyze->add_option("--round", round_digits, "round displayed numbers to D decimals")
        ->check(CLI::NonNegativeNumber);

    CLI::App* export_dot = app.add_subcommand("export-dot", "emit Graphviz digraphs");
    add_common(export_dot, args, true);
    export_dot->add_flag("--flat", flat, "emit the flattened chain");
    export_dot->add_option("--scenario", scenario_name, "emit one scenario's usage model");

    CLI::App* simulate = app.add_subcommand("simulate", "run seeded random walks");
    add_common(simulate, args, true);
    simulate->add_option("--walks", walks, "number of walks");
    simulate->add_option("--seed", seed, "random seed");
    simulate->add_option("--format", format_name, "text, json, or csv");
    simulate->add_option("--round", round_digits, "round displayed numbers to D decimals")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate->parsed()) {
            ucm::UcmModel model = ucm::load_model(args.model_path);
            ucm::ObjectModel objects;
            if (!args.objects_path.empty())
                objects = ucm::load_object_model(args.objects_path, model);
            auto report = ucm::validate_model(model, objects);
            std::cout << ucmcli::render_validation(report);
            return report.ok() ? kExitOk : kExitValidation;
        }

        if (analyze->parsed()) {
            Inputs in = load_inputs(args);
            auto defs = load_definitions(args, in, true);
            std::vector<ucm::ScenarioPath> paths;
            for (const auto& def : defs)
                paths.push_back(ucm::resolve_scenario(def, in.chain, args.loop_bound));
            auto report = ucm::build_report(in.model, in.objects, paths);

            ucmcli::AnalyzeOptions opts;
            if (overall_threshold >= 0.0) opts.overall_threshold = overall_threshold;
            if (alt_threshold >= 0.0) opts.alt_threshold = alt_threshold;
            opts.round_digits = round_digits;
            std::cout << ucmcli::render_report(report, paths, opts, parse_format(format_name));
            return kExitOk;
        }

        if (export_dot->parsed()) {
            Inputs in = load_inputs(args);
            if (!scenario_name.empty()) {
                auto defs = load_definitions(args, in, true);
                for (const auto& def : defs) {
                    if (def.name != scenario_name) continue;
                    auto path = ucm::resolve_scenario(def, in.chain, args.loop_bound);
                    auto sub = ucm::scenario_chain(path, in.chain);
                    std::cout << ucm::to_dot(sub, def.name);
                    return kExitOk;
                }
                std::cerr << "error: no scenario named '" << scenario_name << "'\n";
                return kExitUsage;
            }
            if (flat) {
                std::cout << ucm::to_dot(in.chain, "flat");
                return kExitOk;
            }
            std::cout << ucm::to_dot(ucm::convert(in.model));
            return kExitOk;
        }

        if (simulate->parsed()) {
            if (walks < 1) {
                std::cerr << "error: --walks must be >= 1\n";
                return kExitUsage;
            }
            Inputs in = load_inputs(args);
            auto defs = load_definitions(args, in, false);
            std::map<std::string, std::string> signature_names;
            for (const auto& def : defs) {
                auto path = ucm::resolve_scenario(def, in.chain, args.loop_bound);
                signature_names[ucm::signature_key(path.choices)] = def.name;
            }
            auto est = ucm::estimate(in.chain, walks, seed, args.loop_bound);
            std::cout << ucmcli::render_estimate(est, args.loop_bound, signature_names,
                                                 round_digits, parse_format(format_name));
            return kExitOk;
        }
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const ucm::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::UnknownReference& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::DuplicateId& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::UnknownStub& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::UnknownPlugin& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::UnknownVariable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::DuplicateScenarioName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::UnknownObject& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::CycleDetected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::MultipleParents& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ucm::Error& e) {
        // Resolution and simulation failures: unresolved choices, condition
        // conflicts, loop bounds, recursive plug-ins, failed post-conditions.
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
