#include "sstp/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sstp/brkga.hpp"
#include "sstp/error.hpp"
#include "sstp/parallel.hpp"
#include "sstp/rng.hpp"

namespace sstp {

namespace {

std::vector<char> membership(const std::vector<EdgeId>& edges, EdgeId edge_count) {
    std::vector<char> in(static_cast<std::size_t>(edge_count), 0);
    for (EdgeId e : edges) in[static_cast<std::size_t>(e)] = 1;
    return in;
}

double first_stage_cost(const SstpInstance& instance, const std::vector<EdgeId>& r0) {
    double c = 0.0;
    for (EdgeId e : r0) c += instance.first_stage_costs[e];
    return c;
}

// Shared body of the biased/plain recourse evaluation. `costs_for` builds
// the cost vector the heuristic sees for one scenario.
template <typename CostsFor>
RecourseResult recourse_impl(const std::vector<EdgeId>& first_stage,
                             const StpHeuristic& heuristic,
                             const SstpInstance& instance, CostsFor&& costs_for,
                             const ExecContext& ctx) {
    const auto in_first = membership(first_stage, instance.graph.edge_count());
    RecourseResult result;
    result.per_scenario.resize(instance.scenario_count());
    std::vector<double> values(instance.scenario_count(), 0.0);

    parallel_for(instance.scenario_count(), ctx.threads, [&](std::size_t s) {
        const Scenario& scen = instance.scenarios[s];
        if (scen.terminals.size() <= 1) return;  // trivially satisfied
        StpInstance sub{&instance.graph, costs_for(s), scen.terminals};
        if (ctx.heuristic_calls)
            ctx.heuristic_calls->fetch_add(1, std::memory_order_relaxed);
        std::vector<EdgeId> tree = heuristic(sub);
        double original = 0.0;
        std::vector<EdgeId>& bought = result.per_scenario[s];
        for (EdgeId e : tree) {
            if (in_first[static_cast<std::size_t>(e)]) continue;
            bought.push_back(e);
            original += scen.costs[e];
        }
        std::sort(bought.begin(), bought.end());
        values[s] = scen.probability * original;
    });

    // merge in scenario order so the sum never depends on scheduling
    for (double v : values) result.value += v;
    return result;
}

} // namespace

FeedbackSet neutral_feedback(const SstpInstance& instance) {
    return FeedbackSet(instance.scenario_count(),
                       neutral_chromosome(instance.graph.edge_count()));
}

CostVector biased_scenario_costs(const SstpInstance& instance, std::size_t scenario,
                                 const std::vector<EdgeId>& first_stage,
                                 const Chromosome& q, double alpha) {
    const Scenario& scen = instance.scenarios[scenario];
    CostVector out = perturb_costs(scen.costs, q, alpha);
    for (EdgeId e : first_stage) out[static_cast<std::size_t>(e)] = 0.0;
    return out;
}

RecourseResult recourse_cost(const std::vector<EdgeId>& first_stage,
                             const StpHeuristic& heuristic,
                             const SstpInstance& instance, const FeedbackSet& feedback,
                             double alpha, const ExecContext& ctx) {
    if (feedback.size() != instance.scenario_count())
        throw Error("feedback set size != scenario count");
    return recourse_impl(
        first_stage, heuristic, instance,
        [&](std::size_t s) {
            return biased_scenario_costs(instance, s, first_stage, feedback[s], alpha);
        },
        ctx);
}

RecourseResult recourse_cost_plain(const std::vector<EdgeId>& first_stage,
                                   const StpHeuristic& heuristic,
                                   const SstpInstance& instance,
                                   const ExecContext& ctx) {
    return recourse_impl(
        first_stage, heuristic, instance,
        [&](std::size_t s) {
            CostVector out = instance.scenarios[s].costs;
            for (EdgeId e : first_stage) out[static_cast<std::size_t>(e)] = 0.0;
            return out;
        },
        ctx);
}

double reduced_cost(EdgeId r, const std::vector<EdgeId>& first_stage,
                    const StpHeuristic& heuristic, const SstpInstance& instance,
                    const FeedbackSet& feedback, double alpha,
                    double recourse_at_first_stage, const ExecContext& ctx) {
    if (std::find(first_stage.begin(), first_stage.end(), r) != first_stage.end())
        throw Error("reduced_cost: edge already in the first stage");
    std::vector<EdgeId> extended = first_stage;
    extended.push_back(r);
    const double with_r =
        recourse_cost(extended, heuristic, instance, feedback, alpha, ctx).value;
    return instance.first_stage_costs[r] + with_r - recourse_at_first_stage;
}

std::vector<double> weighted_average_alleles(const FeedbackSet& feedback,
                                             const std::vector<double>& probabilities) {
    if (feedback.size() != probabilities.size())
        throw Error("feedback/probability size mismatch");
    if (feedback.empty()) return {};
    std::vector<double> mean(feedback.front().size(), 0.0);
    for (std::size_t s = 0; s < feedback.size(); ++s) {
        if (feedback[s].size() != mean.size())
            throw Error("feedback chromosome length mismatch");
        for (std::size_t r = 0; r < mean.size(); ++r)
            mean[r] += feedback[s].keys[r] * probabilities[s];
    }
    for (double& v : mean) v = std::clamp(v, 0.0, 1.0);
    return mean;
}

std::vector<EdgeId> local_search(const SstpInstance& instance,
                                 const FeedbackSet& feedback,
                                 const StpHeuristic& heuristic, double alpha,
                                 const ExecContext& ctx) {
    const EdgeId m = instance.graph.edge_count();
    const std::vector<double> mean_key =
        weighted_average_alleles(feedback, instance.probabilities());

    std::vector<EdgeId> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        return mean_key[a] < mean_key[b];  // ties keep the lower edge id
    });

    std::vector<EdgeId> acquired;  // acquisition order
    double recourse_now =
        recourse_cost(acquired, heuristic, instance, feedback, alpha, ctx).value;

    // Phase 1: buy while the purchase does not increase the total
    for (EdgeId r : order) {
        std::vector<EdgeId> candidate = acquired;
        candidate.push_back(r);
        const double recourse_with =
            recourse_cost(candidate, heuristic, instance, feedback, alpha, ctx).value;
        const double rc = instance.first_stage_costs[r] + recourse_with - recourse_now;
        if (rc <= 0.0) {
            assert(first_stage_cost(instance, candidate) + recourse_with <=
                   first_stage_cost(instance, acquired) + recourse_now + 1e-9);
            acquired = std::move(candidate);
            recourse_now = recourse_with;
        }
    }

    // Phase 2: drop purchases whose removal strictly pays, in acquisition order
    std::vector<EdgeId> kept = acquired;
    for (EdgeId r : acquired) {
        std::vector<EdgeId> without;
        without.reserve(kept.size());
        for (EdgeId e : kept)
            if (e != r) without.push_back(e);
        const double recourse_without =
            recourse_cost(without, heuristic, instance, feedback, alpha, ctx).value;
        if (recourse_without - recourse_now - instance.first_stage_costs[r] < 0.0) {
            assert(first_stage_cost(instance, without) + recourse_without <
                   first_stage_cost(instance, kept) + recourse_now + 1e-9);
            kept = std::move(without);
            recourse_now = recourse_without;
        }
    }

    std::sort(kept.begin(), kept.end());
    return kept;
}

SsmResult second_stage_metaheuristic(const SstpInstance& instance,
                                     const FeedbackSet& feedback,
                                     const StpHeuristic& heuristic,
                                     const std::vector<EdgeId>& first_stage,
                                     const BrkgaParams& params, double alpha,
                                     std::uint64_t stream_seed,
                                     const ExecContext& ctx) {
    if (feedback.size() != instance.scenario_count())
        throw Error("feedback set size != scenario count");
    const auto in_first = membership(first_stage, instance.graph.edge_count());

    SsmResult result;
    result.chromosomes.resize(instance.scenario_count());
    result.per_scenario.resize(instance.scenario_count());
    result.scenario_costs.assign(instance.scenario_count(), 0.0);

    parallel_for(instance.scenario_count(), ctx.threads, [&](std::size_t s) {
        const Scenario& scen = instance.scenarios[s];
        if (scen.terminals.size() <= 1) {
            result.chromosomes[s] = feedback[s];  // nothing to solve or learn
            return;
        }
        CostVector zeroed = scen.costs;
        for (EdgeId e : first_stage) zeroed[static_cast<std::size_t>(e)] = 0.0;
        StpInstance sub{&instance.graph, std::move(zeroed), scen.terminals};
        StpDecoder decoder{&sub, &heuristic, alpha, ctx.heuristic_calls};
        Rng rng(derive_seed(stream_seed, s));
        brkga::Result best = brkga::brkga_run(
            decoder, static_cast<std::size_t>(instance.graph.edge_count()),
            feedback[s], params, rng);

        result.chromosomes[s] = std::move(best.best_chromosome);
        std::vector<EdgeId>& bought = result.per_scenario[s];
        for (EdgeId e : best.best_solution)
            if (!in_first[static_cast<std::size_t>(e)]) bought.push_back(e);
        std::sort(bought.begin(), bought.end());
        // fitness was computed on the zeroed costs, i.e. original costs of
        // everything outside the first stage
        result.scenario_costs[s] = best.best_fitness;
    });
    return result;
}

SsmResult tail_step(const SstpInstance& instance, const FeedbackSet& feedback,
                    const StpHeuristic& heuristic,
                    const std::vector<EdgeId>& first_stage,
                    const BrkgaParams& params, double alpha, int tail_factor,
                    std::uint64_t stream_seed, const ExecContext& ctx) {
    if (tail_factor < 1) throw Error("tail_factor must be >= 1");
    BrkgaParams stretched = params;
    stretched.generations = params.generations * tail_factor;
    return second_stage_metaheuristic(instance, feedback, heuristic, first_stage,
                                      stretched, alpha, stream_seed, ctx);
}

bool update_convergence(ConvergenceState& state, double current_cost,
                        const SolverParams& params) {
    const double threshold = (1.0 + params.min_improve) * current_cost;
    if (state.best_cost > threshold)
        state.gic = 0;
    else
        ++state.gic;
    if (state.last_cost > threshold)
        state.lic = 0;
    else
        ++state.lic;
    state.best_cost = std::min(state.best_cost, current_cost);
    state.last_cost = current_cost;

    if (state.gic >= params.max_since_best) return true;
    if (state.lic >= params.max_since_improve) return true;
    if (params.time_limit_seconds && state.elapsed >= *params.time_limit_seconds)
        return true;
    return false;
}

RecourseResult buy_none(const SstpInstance& instance, const StpHeuristic& heuristic,
                        const ExecContext& ctx) {
    return recourse_cost_plain({}, heuristic, instance, ctx);
}

SolveResult solve(const SstpInstance& instance, const SolverParams& solver_params,
                  const BrkgaParams& brkga_params, std::uint64_t master_seed,
                  int threads) {
    solver_params.validate();
    brkga_params.validate();
    instance.validate();
    instance.require_feasible();

    const StpHeuristic heuristic = mst_approx_heuristic();
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    };

    SolveStats stats;
    std::atomic<long long> ls_calls{0}, ssm_calls{0}, tail_calls{0};
    const ExecContext ls_ctx{threads, &ls_calls};
    const ExecContext ssm_ctx{threads, &ssm_calls};
    const ExecContext tail_ctx{threads, &tail_calls};

    struct Best {
        double cost = std::numeric_limits<double>::infinity();
        std::vector<EdgeId> first_stage;
        FeedbackSet chromosomes;
        std::vector<std::vector<EdgeId>> per_scenario;
        std::vector<double> scenario_costs;
    } best;

    FeedbackSet feedback = neutral_feedback(instance);
    ConvergenceState state;
    bool stop = false;
    while (!stop) {
        ++stats.iterations;
        std::vector<EdgeId> first_stage =
            local_search(instance, feedback, heuristic, solver_params.alpha, ls_ctx);
        SsmResult ssm = second_stage_metaheuristic(
            instance, feedback, heuristic, first_stage, brkga_params,
            solver_params.alpha,
            derive_seed(master_seed, static_cast<std::uint64_t>(stats.iterations)),
            ssm_ctx);

        double iteration_cost = first_stage_cost(instance, first_stage);
        for (std::size_t s = 0; s < instance.scenario_count(); ++s)
            iteration_cost += instance.scenarios[s].probability * ssm.scenario_costs[s];

        if (iteration_cost < best.cost) {
            best.cost = iteration_cost;
            best.first_stage = first_stage;
            best.chromosomes = ssm.chromosomes;
            best.per_scenario = ssm.per_scenario;
            best.scenario_costs = ssm.scenario_costs;
        }
        feedback = std::move(ssm.chromosomes);

        state.elapsed = elapsed();
        stop = update_convergence(state, iteration_cost, solver_params);
    }

    // refine the best snapshot; seeding guarantees no scenario gets worse
    constexpr std::uint64_t kTailStream = ~0ull;
    SsmResult tail = tail_step(instance, best.chromosomes, heuristic,
                               best.first_stage, brkga_params, solver_params.alpha,
                               solver_params.tail_factor,
                               derive_seed(master_seed, kTailStream), tail_ctx);
    for (std::size_t s = 0; s < instance.scenario_count(); ++s) {
        assert(tail.scenario_costs[s] <= best.scenario_costs[s] + 1e-9);
        if (tail.scenario_costs[s] < best.scenario_costs[s]) {
            best.scenario_costs[s] = tail.scenario_costs[s];
            best.per_scenario[s] = std::move(tail.per_scenario[s]);
        }
    }

    SolveResult out;
    out.solution.first_stage = std::move(best.first_stage);
    out.solution.per_scenario = std::move(best.per_scenario);
    out.solution.cost = solution_cost(instance, out.solution);
    if (!check_feasible(instance, out.solution))
        throw Error("solver produced an infeasible solution");

    stats.ls_calls = ls_calls.load();
    stats.ssm_calls = ssm_calls.load();
    stats.tail_calls = tail_calls.load();
    stats.wall_seconds = elapsed();
    out.stats = stats;
    return out;
}

} // namespace sstp
