#include <cstdio>
#include <exception>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risim/config.hpp"
#include "risim/errors.hpp"
#include "risim/game.hpp"
#include "risim/presets.hpp"
#include "risim/scenario.hpp"

namespace {

using namespace risim;

int fail(const std::string& category, const std::string& message, int code) {
    std::cerr << "error: category=" << category << " message=\"" << message << "\"\n";
    return code;
}

ExperimentConfig load_or_default(const std::string& config_path, std::uint64_t seed_override,
                                 bool has_seed) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (has_seed) cfg.seeds = {seed_override};
    return cfg;
}

int cmd_run(const std::string& preset, const ExperimentConfig& cfg, const std::string& out_dir) {
    if (!is_known_preset(preset))
        throw UnknownPreset("unknown preset \"" + preset + "\"");
    const auto files = run_preset(preset, cfg, out_dir);
    for (const auto& [name, contents] : files) {
        std::cout << out_dir << "/" << name << " (" << contents.size() << " bytes)\n";
    }
    return 0;
}

int cmd_export(const ExperimentConfig& cfg, std::size_t elements, const std::string& out_dir) {
    const std::uint64_t seed = cfg.seeds.empty() ? 1 : cfg.seeds.front();
    const auto topo = topology_from_config(cfg, elements, seed);
    const auto channels = build_channel_set(topo, seed, cfg.gbsm);

    PhaseShiftVector phases;
    if (elements > 0) {
        const auto game = run_stackelberg(channels, cfg.game, seed);
        phases = game.phases;
    }
    const auto scenario = build_scenario(topo, channels, phases, seed, cfg.gbsm);

    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) /
                      ("scenario_" + std::string(cfg.band == Band::Sub6 ? "sub6" : "mmwave") +
                       "_m" + std::to_string(elements) + "_seed" + std::to_string(seed) + ".txt");
    export_scenario(scenario, path.string());
    std::cout << path.string() << " (" << scenario.records.size() << " pair records)\n";
    return 0;
}

int cmd_verify(const ExperimentConfig& cfg, const std::string& out_dir) {
    bool all_ok = true;
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    for (std::uint64_t seed : cfg.seeds) {
        for (std::size_t m : cfg.ris_elements) {
            const auto topo = topology_from_config(cfg, m, seed);
            const auto channels = build_channel_set(topo, seed, cfg.gbsm);
            const auto result = run_stackelberg(channels, cfg.game, seed);
            if (!out_dir.empty()) {
                const auto path =
                    std::filesystem::path(out_dir) /
                    ("trace_m" + std::to_string(m) + "_seed" + std::to_string(seed) + ".csv");
                std::ofstream trace_out(path, std::ios::binary);
                if (!trace_out) throw IoError("verify: cannot open " + path.string());
                trace_out << trace_to_csv(result, seed);
            }
            if (!result.state.converged) {
                std::printf("seed=%llu M=%zu: NOT CONVERGED after %d rounds\n",
                            static_cast<unsigned long long>(seed), m, result.state.iteration);
                all_ok = false;
                continue;
            }
            const auto report = nash_verify(result.state, result.gains, cfg.game, 10000,
                                            channels.band.noise_ref_watts());
            double worst = 0.0;
            for (double d : report.deviation_gain_rel) worst = std::max(worst, d);
            std::printf("seed=%llu M=%zu: rounds=%d nash=%s worst_deviation_gain=%.3e\n",
                        static_cast<unsigned long long>(seed), m, result.state.iteration,
                        report.passed ? "PASS" : "FAIL", worst);
            if (!report.passed) all_ok = false;

            // Unit-modulus sanity on the exported phase vector.
            if (m > 0) {
                for (double th : result.phases.theta) {
                    if (!(th >= 0.0 && th < 2.0 * M_PI + 1e-12)) {
                        std::printf("  phase out of range: %g\n", th);
                        all_ok = false;
                    }
                }
            }
        }
    }
    std::cout << (all_ok ? "verify: PASS" : "verify: FAIL") << "\n";
    return all_ok ? 0 : 6;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted UAV uplink NOMA simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool has_seed = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config JSON");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the config seed list with one seed")
            ->each([&](const std::string&) { has_seed = true; });
    };

    std::string preset;
    auto* run = app.add_subcommand("run", "run a preset campaign");
    run->add_option("--preset", preset, "fig6|fig7|fig8|fig9|tables3and4|v2x_highway")
        ->required();
    add_common(run);

    std::size_t elements = 100;
    auto* exp = app.add_subcommand("export-scenario", "write an emulator scenario file");
    exp->add_option("--elements", elements, "RIS element count");
    add_common(exp);

    auto* verify = app.add_subcommand("verify", "run Nash verification and invariant checks");
    add_common(verify);

    try {
        app.parse(argc, argv);
        const auto cfg = load_or_default(config_path, seed, has_seed);
        if (run->parsed()) return cmd_run(preset, cfg, out_dir);
        if (exp->parsed()) return cmd_export(cfg, elements, out_dir);
        if (verify->parsed()) return cmd_verify(cfg, out_dir);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const risim::ParseError& e) {
        return fail("ParseError", e.what(), 3);
    } catch (const risim::SchemaError& e) {
        return fail("SchemaError", e.what(), 3);
    } catch (const risim::IoError& e) {
        return fail("IoError", e.what(), 4);
    } catch (const risim::UnknownPreset& e) {
        return fail("UnknownPreset", e.what(), 5);
    } catch (const std::exception& e) {
        return fail("Error", e.what(), 1);
    }
}
