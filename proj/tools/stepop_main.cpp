#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stepop/io.hpp"

namespace {

using stepop::Json;

struct Shape {
    int n_dims = 0;
    int p = 0;
};

Json singular_error_json(const stepop::SingularBlockError& e, const Shape& shape) {
    Json err;
    err["error"] = "singular";
    const stepop::DimSubset alpha{e.alpha_bits};
    Json dims = Json::array();
    for (int d : alpha.dims()) dims.push_back(d);
    err["alpha"] = std::move(dims);
    Json idx = Json::array();
    if (shape.n_dims > 0) {
        const auto outer = stepop::index_unrank(alpha.complement(shape.n_dims), e.index_rank, shape.p);
        for (int v : outer.entries()) idx.push_back(v);
    }
    err["index"] = std::move(idx);
    return err;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebra of mixed multidimensional integral operators with p-step kernels"};
    app.require_subcommand(1);

    std::string input, rhs, output;
    int q = 1;
    double tolerance = 1e-7;
    int p_target = 1;
    int trials = 100;
    unsigned seed = 1;
    int sweep_dims = 2;
    int sweep_p = 2;

    auto add_io = [&](CLI::App* cmd, bool needs_rhs) {
        cmd->add_option("--input", input, "input document")->required();
        if (needs_rhs) cmd->add_option("--rhs", rhs, "second input document")->required();
        cmd->add_option("--output", output, "output path (stdout when absent)");
    };

    auto* represent = app.add_subcommand("represent", "map an operator to its matrix blocks");
    add_io(represent, false);
    auto* invert = app.add_subcommand("invert", "invert an operator through the block picture");
    add_io(invert, false);
    auto* solve = app.add_subcommand("solve", "solve A u = f for a step function f");
    add_io(solve, true);
    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of all blocks with labels");
    add_io(spectrum_cmd, false);
    auto* trace_cmd = app.add_subcommand("trace", "blockwise trace tuple");
    add_io(trace_cmd, false);
    auto* det_cmd = app.add_subcommand("det", "blockwise determinant tuple");
    add_io(det_cmd, false);
    auto* apply_cmd = app.add_subcommand("apply", "apply an operator to a step function");
    add_io(apply_cmd, true);
    auto* compose_cmd = app.add_subcommand("compose", "compose two operators (rhs acts first)");
    add_io(compose_cmd, true);
    auto* exp_cmd = app.add_subcommand("exp", "operator exponential");
    add_io(exp_cmd, false);
    auto* project_cmd = app.add_subcommand("project", "project a sampled kernel onto p-step form");
    add_io(project_cmd, false);
    project_cmd->add_option("--p", p_target, "target steps per axis")->required();

    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "compare block results against the dense matrix");
    oracle_cmd->add_option("--input", input, "operator document (random sweep when absent)");
    oracle_cmd->add_option("--output", output, "output path (stdout when absent)");
    oracle_cmd->add_option("--q", q, "oracle refinement")->capture_default_str();
    oracle_cmd->add_option("--tolerance", tolerance, "eigenvalue match tolerance")
        ->capture_default_str();
    oracle_cmd->add_option("--trials", trials, "random trials when no --input")
        ->capture_default_str();
    oracle_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    oracle_cmd->add_option("--n-dims", sweep_dims, "dimensions for random trials")
        ->capture_default_str();
    oracle_cmd->add_option("--p", sweep_p, "steps per axis for random trials")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    Shape shape;
    try {
        if (represent->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            shape = {a.n_dims(), a.p()};
            stepop::store_document(stepop::representation_to_json(stepop::sigma(a)), output);
        } else if (invert->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            shape = {a.n_dims(), a.p()};
            stepop::store_document(stepop::operator_to_json(stepop::operator_invert(a)), output);
        } else if (solve->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            shape = {a.n_dims(), a.p()};
            const auto f = stepop::function_from_json(stepop::load_document(rhs));
            stepop::store_document(stepop::function_to_json(stepop::operator_solve(a, f)), output);
        } else if (spectrum_cmd->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            shape = {a.n_dims(), a.p()};
            stepop::store_document(stepop::spectrum_to_json(stepop::spectrum(a)), output);
        } else if (trace_cmd->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            stepop::store_document(stepop::tracedet_to_json(stepop::trace_tuple(a), "trace"), output);
        } else if (det_cmd->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            stepop::store_document(stepop::tracedet_to_json(stepop::det_tuple(a), "det"), output);
        } else if (apply_cmd->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            shape = {a.n_dims(), a.p()};
            const auto u = stepop::function_from_json(stepop::load_document(rhs));
            stepop::store_document(stepop::function_to_json(stepop::apply(a, u)), output);
        } else if (compose_cmd->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            const auto b = stepop::operator_from_json(stepop::load_document(rhs));
            stepop::store_document(stepop::operator_to_json(stepop::compose(a, b)), output);
        } else if (exp_cmd->parsed()) {
            const auto a = stepop::operator_from_json(stepop::load_document(input));
            shape = {a.n_dims(), a.p()};
            stepop::store_document(stepop::operator_to_json(stepop::operator_exp(a)), output);
        } else if (project_cmd->parsed()) {
            const auto kernel = stepop::kernel_from_json(stepop::load_document(input));
            stepop::store_document(stepop::operator_to_json(stepop::project_kernel(kernel, p_target)),
                                   output);
        } else if (oracle_cmd->parsed()) {
            Json report;
            report["type"] = "oracle-check";
            report["q"] = q;
            report["tolerance"] = tolerance;
            Json results = Json::array();
            bool all_pass = true;
            auto run_one = [&](const stepop::StepOperator& a, unsigned trial_seed) {
                const auto spec = stepop::oracle_spectrum_check(a, q, tolerance);
                const auto inv = stepop::oracle_invertibility_check(a);
                Json r;
                r["seed"] = trial_seed;
                r["n_dims"] = a.n_dims();
                r["p"] = a.p();
                r["spectrum_pass"] = spec.pass;
                r["max_mismatch"] = spec.max_mismatch;
                r["invertibility_agree"] = inv.agree;
                results.push_back(std::move(r));
                all_pass = all_pass && spec.pass && inv.agree;
            };
            if (!input.empty()) {
                const auto a = stepop::operator_from_json(stepop::load_document(input));
                shape = {a.n_dims(), a.p()};
                run_one(a, seed);
            } else {
                std::mt19937 rng(seed);
                for (int t = 0; t < trials; ++t)
                    run_one(stepop::random_integer_operator(rng, sweep_dims, sweep_p), seed + t);
            }
            report["trials"] = std::move(results);
            report["all_pass"] = all_pass;
            stepop::store_document(report, output);
            if (!all_pass) return 1;
        }
    } catch (const stepop::SingularBlockError& e) {
        std::cerr << stepop::write_document(singular_error_json(e, shape));
        return 2;
    } catch (const stepop::SingularMatrixError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const stepop::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const stepop::SizeGuardError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
