#include "entanglecert/run.hpp"

#include <cmath>

#include "entanglecert/monitor.hpp"
#include "entanglecert/version.hpp"

namespace entanglecert {

namespace {

std::vector<Test> tests_from_selection(TestSelection selection) {
    switch (selection) {
        case TestSelection::witness: return {Test::witness};
        case TestSelection::steering_ab: return {Test::steering_a_to_b};
        case TestSelection::steering_ba: return {Test::steering_b_to_a};
        case TestSelection::chsh: return {Test::chsh};
        case TestSelection::all:
            return {Test::witness, Test::steering_a_to_b, Test::steering_b_to_a, Test::chsh};
    }
    return {};
}

std::string column_for(Test t) {
    switch (t) {
        case Test::witness: return "w";
        case Test::steering_a_to_b: return "s3_ab";
        case Test::steering_b_to_a: return "s3_ba";
        case Test::chsh: return "s";
    }
    return "stat";
}

ResultTable start_table(const RunConfig& config) {
    ResultTable table;
    table.metadata = config_echo(config);
    table.add_info("version", version);
    return table;
}

ResultTable run_certify(const RunConfig& config) {
    ResultTable table = start_table(config);
    table.add_info("tests", "0=witness 1=steering-ab 2=steering-ba 3=chsh");
    table.columns = {"test_id", "pa", "pb", "statistic", "threshold",
                     "certified", "standard_error", "shots"};

    const DensityMatrix state = resolve_state(config.state);
    RngStream root(config.seed, 0);
    const auto tests = tests_from_selection(config.test);
    for (std::size_t k = 0; k < tests.size(); ++k) {
        CertificationResult result;
        if (config.shots > 0) {
            result = certify_sampled(state, tests[k], config.pa, config.pb, config.shots,
                                     root.split(k));
        } else {
            switch (tests[k]) {
                case Test::witness:
                    result = witness_weak(state, config.pa, config.pb);
                    break;
                case Test::steering_a_to_b:
                    result = steering(state, config.pa, config.pb, TrustedSide::bob);
                    break;
                case Test::steering_b_to_a:
                    result = steering(state, config.pa, config.pb, TrustedSide::alice);
                    break;
                case Test::chsh:
                    result = chsh(state, config.pa, config.pb);
                    break;
            }
        }
        table.rows.push_back({static_cast<double>(static_cast<int>(result.test)), config.pa,
                              config.pb, result.statistic, result.threshold,
                              result.certified ? 1.0 : 0.0, result.standard_error,
                              static_cast<double>(config.shots)});
    }
    return table;
}

ResultTable run_sweep(const RunConfig& config) {
    ResultTable table = start_table(config);
    const DensityMatrix state = resolve_state(config.state);

    SweepGrid grid;
    grid.pa_values = config.grid.values();
    grid.pb_values = config.grid.values();
    grid.tests = tests_from_selection(config.test);
    grid.shots = config.shots;

    const auto results = sweep_certification(grid, state, RngStream(config.seed, 0));

    table.columns = {"pa", "pb"};
    for (const Test t : grid.tests) {
        table.columns.push_back(column_for(t));
        if (config.shots > 0) table.columns.push_back(column_for(t) + "_se");
    }

    const std::size_t npa = grid.pa_values.size();
    const std::size_t npb = grid.pb_values.size();
    for (std::size_t i = 0; i < npa; ++i)
        for (std::size_t j = 0; j < npb; ++j) {
            std::vector<double> row{grid.pa_values[i], grid.pb_values[j]};
            for (std::size_t t = 0; t < grid.tests.size(); ++t) {
                const auto& cell = results[(t * npa + i) * npb + j];
                row.push_back(cell.statistic);
                if (config.shots > 0) row.push_back(cell.standard_error);
            }
            table.rows.push_back(std::move(row));
        }
    return table;
}

AveragingPlan plan_from_config(const RunConfig& config) {
    return config.plan == "chsh" ? AveragingPlan::chsh_plan() : AveragingPlan::witness_plan();
}

ResultTable run_recover(const RunConfig& config) {
    ResultTable table = start_table(config);
    const DensityMatrix state = resolve_state(config.state);
    const auto p_values = SweepGrid::linspace(0.0, 1.0, config.points);
    const auto rows = sweep_recovery(p_values, state, PureState::bell_phi_plus(),
                                     plan_from_config(config), config.shots, config.policy,
                                     RngStream(config.seed, 0));

    table.columns = {"p",           "fidelity_before", "eof_before",   "purity_before",
                     "fidelity_after", "eof_after",    "purity_after", "matched_fraction"};
    for (const auto& r : rows)
        table.rows.push_back({r.p, r.fidelity_before, r.eof_before, r.purity_before,
                              r.fidelity_after, r.eof_after, r.purity_after, r.matched_fraction});
    return table;
}

ResultTable run_tradeoff(const RunConfig& config) {
    ResultTable table = start_table(config);
    const DensityMatrix state = resolve_state(config.state);
    const auto p_values = SweepGrid::linspace(0.0, 1.0, config.points);
    const auto rows = tradeoff_curves(p_values, state, plan_from_config(config));

    table.columns = {"p", "reversibility", "chsh", "steering", "eof"};
    for (const auto& r : rows)
        table.rows.push_back({r.p, r.reversibility, r.chsh, r.steering, r.eof});
    return table;
}

ResultTable run_monitor(const RunConfig& config) {
    ResultTable table = start_table(config);

    OUProcess process;
    process.mean = config.ou_mu;
    process.rate = config.ou_theta;
    process.volatility = config.ou_sigma;
    process.dt = config.ou_dt;
    process.value = config.ou_mu;

    SelectionConfig selection;
    selection.threshold = config.threshold;
    selection.window_shots = config.window_shots;
    selection.pa = config.pa;
    selection.pb = config.pb;
    selection.exact = config.exact;

    const EnsembleReport report =
        run_monitoring(selection, process, config.windows, RngStream(config.seed, 0));

    table.columns = {"window", "gamma", "witness", "witness_se", "selected", "s", "s_se"};
    for (const auto& w : report.windows)
        table.rows.push_back({static_cast<double>(w.index), w.gamma, w.witness, w.witness_se,
                              w.selected ? 1.0 : 0.0, w.s, w.s_se});
    table.add_info("selected_count", std::to_string(report.selected_count));
    table.add_info("s_selected", format_value(report.s_selected));
    table.add_info("s_selected_se", format_value(report.s_selected_se));
    table.add_info("s_all", format_value(report.s_all));
    table.add_info("s_all_se", format_value(report.s_all_se));
    return table;
}

ResultTable run_tomography(const RunConfig& config) {
    if (config.state.kind != StateSpec::Kind::tomo)
        throw ValidationError("tomography requires state=tomo:<path>");

    ResultTable table = start_table(config);
    const DensityMatrix rho = resolve_state(config.state);

    table.columns = {"row", "col", "re", "im"};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            table.rows.push_back({static_cast<double>(i), static_cast<double>(j),
                                  rho.m(i, j).real(), rho.m(i, j).imag()});

    table.add_info("min_eigenvalue", format_value(rho.min_eigenvalue()));
    table.add_info("fidelity_phi_plus",
                   format_value(fidelity_with_pure(PureState::bell_phi_plus(), rho)));
    table.add_info("purity", format_value(purity(rho)));
    double c = std::nan("");
    try {
        c = concurrence(rho);
    } catch (const Error&) {
        // Spectrum too negative for the PSD square root at finite shots.
    }
    table.add_info("concurrence", format_value(c));
    return table;
}

}  // namespace

ResultTable run_command(const RunConfig& config) {
    validate(config);
    switch (config.command) {
        case Command::certify: return run_certify(config);
        case Command::sweep: return run_sweep(config);
        case Command::recover: return run_recover(config);
        case Command::tradeoff: return run_tradeoff(config);
        case Command::monitor: return run_monitor(config);
        case Command::tomography: return run_tomography(config);
    }
    throw ValidationError("unknown command");
}

}  // namespace entanglecert
