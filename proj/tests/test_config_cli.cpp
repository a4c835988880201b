#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fvlab/runner.hpp"

using namespace fvlab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    fs::path p = fs::temp_directory_path() /
                 ("fvlab_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string write_file(const fs::path& dir, const std::string& name, const std::string& body) {
    fs::path p = dir / name;
    std::ofstream out(p);
    out << body;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("minimal config gets scenario defaults") {
    auto dir = fresh_dir("cfg_min");
    std::string path = write_file(dir, "run.toml",
                                  "scenario = \"burgers_stationary_shock\"\n"
                                  "[grid]\nn_cells = 100\n"
                                  "[time]\nT = 0.5\n");
    RunConfig c = parse_config(path);
    CHECK(c.scenario == "burgers_stationary_shock");
    CHECK(c.n_cells == 100);
    CHECK(c.T == 0.5);
    CHECK(c.scheme == "godunov");
    CHECK(c.cfl == 0.5);
    CHECK(c.output_count == 11);
    CHECK_FALSE(c.dp_enabled);
    CHECK(c.elliptic_backend == "green");
}

TEST_CASE("config errors carry key paths and valid alternatives") {
    auto dir = fresh_dir("cfg_err");

    std::string bad_scheme = write_file(dir, "a.toml",
                                        "scenario = \"burgers_rarefaction\"\n"
                                        "scheme = \"weno5\"\n");
    try {
        parse_config(bad_scheme);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.issues().size() == 1);
        CHECK(e.issues()[0].find("scheme") != std::string::npos);
        CHECK(e.issues()[0].find("godunov") != std::string::npos);
        CHECK(e.issues()[0].find("engquist_osher") != std::string::npos);
        CHECK(e.issues()[0].find("lax_friedrichs") != std::string::npos);
    }

    std::string bad_T = write_file(dir, "b.toml",
                                   "scenario = \"burgers_rarefaction\"\n"
                                   "[time]\nT = -1.0\n");
    CHECK_THROWS_AS(parse_config(bad_T), ConfigError);

    std::string bad_scn = write_file(dir, "c.toml", "scenario = \"does_not_exist\"\n");
    try {
        parse_config(bad_scn);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.issues()[0].find("burgers_stationary_shock") != std::string::npos);
    }

    std::string bad_flag = write_file(dir, "d.toml",
                                      "scenario = \"burgers_rarefaction\"\n"
                                      "[dp]\nenabled = true\n");
    CHECK_THROWS_AS(parse_config(bad_flag), ConfigError);

    std::string unknown_key = write_file(dir, "e.toml",
                                         "scenario = \"burgers_rarefaction\"\n"
                                         "mystery = 3\n");
    CHECK_THROWS_AS(parse_config(unknown_key), ConfigError);

    CHECK_THROWS_AS(parse_config((dir / "missing.toml").string()), ConfigError);

    std::string small_grid = write_file(dir, "f.toml",
                                        "scenario = \"burgers_rarefaction\"\n"
                                        "[grid]\nn_cells = 4\n");
    CHECK_THROWS_AS(parse_config(small_grid), ConfigError);
}

TEST_CASE("toml subset parses arrays and tolerance tables") {
    auto dir = fresh_dir("cfg_arr");
    std::string path = write_file(dir, "run.toml",
                                  "scenario = \"dp_constant\"  # trailing comment\n"
                                  "diagnostics = [\"max_principle\", \"p_bounds\"]\n"
                                  "[tolerances]\n"
                                  "kruzkov_production = 0.25\n"
                                  "[output]\n"
                                  "dir = \"somewhere\"\n"
                                  "formats = [\"csv\"]\n");
    RunConfig c = parse_config(path);
    REQUIRE(c.diagnostics.size() == 2);
    CHECK(c.diagnostics[1] == "p_bounds");
    CHECK(c.tolerances.at("kruzkov_production") == 0.25);
    CHECK(c.output_dir == "somewhere");
    CHECK(c.dp_enabled);
}

TEST_CASE("stationary shock run writes artifacts and passes checks") {
    auto dir = fresh_dir("run_shock");
    RunConfig c;
    c.scenario = "burgers_stationary_shock";
    c.n_cells = 64;
    c.output_dir = (dir / "out").string();
    RunResult res = run_scenario(c);
    CHECK(res.exit_code == kExitPass);
    CHECK(fs::exists(dir / "out" / "fields.csv"));
    CHECK(fs::exists(dir / "out" / "diagnostics.json"));
    CHECK(fs::exists(dir / "out" / "traces.csv"));
    CHECK(fs::exists(dir / "out" / "meta.json"));

    bool saw_production = false;
    for (const auto& r : res.reports) {
        CHECK(r.passed);
        if (r.name == "kruzkov_production") saw_production = true;
    }
    CHECK(saw_production);

    std::string meta = slurp((dir / "out" / "meta.json").string());
    CHECK(meta.find("\"status\": \"done\"") != std::string::npos);
    CHECK(meta.find("dt_history") != std::string::npos);
}

TEST_CASE("dp constant run keeps u flat in the emitted fields") {
    auto dir = fresh_dir("run_dpc");
    RunConfig c;
    c.scenario = "dp_constant";
    c.n_cells = 32;
    c.T = 0.1;
    c.output_dir = (dir / "out").string();
    RunResult res = run_scenario(c);
    CHECK(res.exit_code == kExitPass);

    std::vector<std::string> header;
    auto rows = read_csv((dir / "out" / "fields.csv").string(), &header);
    REQUIRE(header.size() == 5);  // t,x,u,P,Px
    REQUIRE(!rows.empty());
    for (const auto& r : rows) CHECK(std::stod(r[2]) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("solver aborts surface as exit code 3 with forensics") {
    auto dir = fresh_dir("run_abort");
    RunConfig c;
    c.scenario = "linear_advection_inflow";
    c.n_cells = 16;
    c.T = 1e5;
    c.max_steps = 50;
    c.output_dir = (dir / "out").string();
    RunResult res = run_scenario(c);
    CHECK(res.exit_code == kExitSolverAbort);
    std::string meta = slurp((dir / "out" / "meta.json").string());
    CHECK(meta.find("\"status\": \"aborted\"") != std::string::npos);
    CHECK(meta.find("max_steps") != std::string::npos);
}

TEST_CASE("environment variable overrides the output directory") {
    auto dir = fresh_dir("run_env");
    std::string target = (dir / "env_out").string();
    setenv("SOLVER_OUTPUT_DIR", target.c_str(), 1);
    RunConfig c;
    c.scenario = "dp_constant";
    c.n_cells = 32;
    c.T = 0.05;
    c.output_dir = (dir / "ignored").string();
    RunResult res = run_scenario(c);
    unsetenv("SOLVER_OUTPUT_DIR");
    CHECK(res.exit_code == kExitPass);
    CHECK(res.output_dir == target);
    CHECK(fs::exists(fs::path(target) / "fields.csv"));
    CHECK_FALSE(fs::exists(dir / "ignored"));
}

TEST_CASE("identical configs give bitwise identical output") {
    auto dir = fresh_dir("run_repro");
    RunConfig c;
    c.scenario = "burgers_rarefaction";
    c.n_cells = 50;
    for (const char* sub : {"one", "two"}) {
        c.output_dir = (dir / sub).string();
        CHECK(run_scenario(c).exit_code == kExitPass);
    }
    CHECK(slurp((dir / "one" / "fields.csv").string()) ==
          slurp((dir / "two" / "fields.csv").string()));
    CHECK(slurp((dir / "one" / "traces.csv").string()) ==
          slurp((dir / "two" / "traces.csv").string()));
}

TEST_CASE("elliptic cosine study observes second order") {
    auto dir = fresh_dir("study_ell");
    RunConfig c;
    c.scenario = "elliptic_cosine";
    c.output_dir = (dir / "out").string();
    StudyResult res = convergence_study(c, {50, 100, 200});
    CHECK(res.lsq_order == doctest::Approx(2.0).epsilon(0.05));
    CHECK(fs::exists(dir / "out" / "convergence.csv"));
    CHECK(fs::exists(dir / "out" / "convergence.gp"));

    CHECK_THROWS_AS(convergence_study(c, {100, 50, 200}), ConfigError);
    CHECK_THROWS_AS(convergence_study(c, {50, 100}), ConfigError);
}

TEST_CASE("cli run/study/check subcommands") {
    auto dir = fresh_dir("cli");
    std::string cfg = write_file(dir, "run.toml",
                                 "scenario = \"dp_constant\"\n"
                                 "[grid]\nn_cells = 32\n"
                                 "[time]\nT = 0.05\n"
                                 "[output]\ndir = \"" + (dir / "cli_out").string() + "\"\n");
    CHECK(cli_main({"run", cfg}) == kExitPass);

    std::string bad = write_file(dir, "bad.toml", "scenario = \"nope\"\n");
    CHECK(cli_main({"run", bad}) == kExitConfigError);
    CHECK(cli_main({"bogus_subcommand"}) == kExitConfigError);

    // inadmissible trace fixture: left trace 1 against datum 0
    std::ostringstream fixture;
    fixture << "t,side,s_j,layer_avg\n";
    for (double s : {0.04, 0.02, 0.01})
        for (double t : {0.0, 0.1, 0.2}) fixture << t << ",left," << s << ",1.0\n";
    std::string trace_csv = write_file(dir, "traces.csv", fixture.str());
    CHECK(cli_main({"check", trace_csv, "--diag", "boundary_entropy", "--side", "left",
                    "--datum", "0.0"}) == kExitDiagnosticFailure);
    // the same trace on the right side is admissible free outflow
    std::ostringstream fixture_r;
    fixture_r << "t,side,s_j,layer_avg\n";
    for (double s : {0.04, 0.02, 0.01})
        for (double t : {0.0, 0.1, 0.2}) fixture_r << t << ",right," << s << ",1.0\n";
    std::string trace_r = write_file(dir, "traces_r.csv", fixture_r.str());
    CHECK(cli_main({"check", trace_r, "--diag", "boundary_entropy", "--side", "right",
                    "--datum", "0.0"}) == kExitPass);

    CHECK(cli_main({"check", trace_csv, "--diag", "unknown_thing"}) == kExitConfigError);

    // fields fixture within the data bound passes the reduced max check
    std::ostringstream fields;
    fields << "t,x,u\n";
    for (double t : {0.0, 0.1})
        for (double x : {0.25, 0.75}) fields << t << "," << x << "," << 0.5 * (1.0 - t) << "\n";
    std::string fields_csv = write_file(dir, "fields.csv", fields.str());
    CHECK(cli_main({"check", fields_csv, "--diag", "max_principle"}) == kExitPass);
}

TEST_CASE("every shipped scenario passes its full diagnostic set") {
    auto dir = fresh_dir("registry");
    for (const auto& scn : scenario_registry()) {
        RunConfig c;
        c.scenario = scn.name;
        c.n_cells = 100;
        c.output_dir = (dir / scn.name).string();
        RunResult res = run_scenario(c);
        INFO("scenario ", scn.name);
        CHECK(res.exit_code == kExitPass);
        for (const auto& r : res.reports) {
            INFO("scenario ", scn.name, " check ", r.name);
            CHECK(r.passed);
        }
    }
}

TEST_CASE("study cli writes the table") {
    auto dir = fresh_dir("cli_study");
    std::string cfg = write_file(dir, "study.toml",
                                 "scenario = \"elliptic_cosine\"\n"
                                 "[output]\ndir = \"" + (dir / "out").string() + "\"\n");
    CHECK(cli_main({"study", cfg, "--cells", "50,100,200"}) == kExitPass);
    std::vector<std::string> header;
    auto rows = read_csv((dir / "out" / "convergence.csv").string(), &header);
    REQUIRE(header.size() == 4);
    CHECK(rows.size() == 3);
}
