#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <vector>

#include "sstp/instance.hpp"
#include "sstp/params.hpp"
#include "sstp/solution.hpp"
#include "sstp/steiner.hpp"

namespace sstp {

/// Per-scenario feedback chromosomes, one per scenario (all length |E|).
/// Keys near 0 mark edges that scenario solutions keep using.
using FeedbackSet = std::vector<Chromosome>;

FeedbackSet neutral_feedback(const SstpInstance& instance);

/// Execution knobs shared by the scenario-level operations: worker bound for
/// scenario parallelism and an optional heuristic-call counter.
struct ExecContext {
    int threads = 1;
    std::atomic<long long>* heuristic_calls = nullptr;
};

/// Scenario costs seen by the base heuristic during first-stage search:
/// zero on already-acquired edges, chromosome-perturbed second-stage cost
/// elsewhere. A neutral chromosome reproduces the plain zero/original split.
CostVector biased_scenario_costs(const SstpInstance& instance, std::size_t scenario,
                                 const std::vector<EdgeId>& first_stage,
                                 const Chromosome& q, double alpha);

struct RecourseResult {
    double value = 0.0;                             // probability-weighted
    std::vector<std::vector<EdgeId>> per_scenario;  // sorted, exclude first stage
};

/// Expected completion cost given the first-stage purchases: every scenario
/// is solved by the heuristic on biased costs, and the returned sets are
/// priced with the original scenario costs. Scenarios may run concurrently.
RecourseResult recourse_cost(const std::vector<EdgeId>& first_stage,
                             const StpHeuristic& heuristic,
                             const SstpInstance& instance, const FeedbackSet& feedback,
                             double alpha, const ExecContext& ctx = {});

/// Unbiased variant: plain zero/original scenario costs, no chromosome
/// involvement. recourse_cost with an all-neutral feedback set must match
/// this bit-exactly; the pairing is part of the test suite.
RecourseResult recourse_cost_plain(const std::vector<EdgeId>& first_stage,
                                   const StpHeuristic& heuristic,
                                   const SstpInstance& instance,
                                   const ExecContext& ctx = {});

/// Marginal value of buying edge r now: its first-stage cost plus the change
/// in recourse. Non-positive means the purchase pays for itself. r must not
/// already be in the first stage. `recourse_at_first_stage` caches
/// recourse_cost(first_stage).value so scans do not recompute it.
double reduced_cost(EdgeId r, const std::vector<EdgeId>& first_stage,
                    const StpHeuristic& heuristic, const SstpInstance& instance,
                    const FeedbackSet& feedback, double alpha,
                    double recourse_at_first_stage, const ExecContext& ctx = {});

/// Probability-weighted mean key per edge across the feedback set, clamped
/// to [0,1]. Drives the local-search scan order.
std::vector<double> weighted_average_alleles(const FeedbackSet& feedback,
                                             const std::vector<double>& probabilities);

/// First-stage selection. Phase 1 starts empty and scans edges in increasing
/// weighted-average-allele order (ties: lower edge id), buying every edge
/// with non-positive reduced cost; single pass, first improvement. Phase 2
/// rescans the purchases in acquisition order and drops any whose removal
/// strictly lowers the total. Returns sorted edge ids.
std::vector<EdgeId> local_search(const SstpInstance& instance,
                                 const FeedbackSet& feedback,
                                 const StpHeuristic& heuristic, double alpha,
                                 const ExecContext& ctx = {});

struct SsmResult {
    FeedbackSet chromosomes;                        // best chromosome per scenario
    std::vector<std::vector<EdgeId>> per_scenario;  // sorted, exclude first stage
    std::vector<double> scenario_costs;             // original costs, unweighted
};

/// Per-scenario GA pass: each scenario becomes an STP instance with zero
/// cost on first-stage edges and is solved by a BRKGA seeded with that
/// scenario's feedback chromosome. Per-scenario rng streams derive from
/// (stream_seed, scenario), so concurrent execution is order-independent.
SsmResult second_stage_metaheuristic(const SstpInstance& instance,
                                     const FeedbackSet& feedback,
                                     const StpHeuristic& heuristic,
                                     const std::vector<EdgeId>& first_stage,
                                     const BrkgaParams& params, double alpha,
                                     std::uint64_t stream_seed,
                                     const ExecContext& ctx = {});

/// Final refinement: one more metaheuristic pass with the generation budget
/// multiplied by tail_factor, seeded with the best solution's chromosomes.
SsmResult tail_step(const SstpInstance& instance, const FeedbackSet& feedback,
                    const StpHeuristic& heuristic,
                    const std::vector<EdgeId>& first_stage,
                    const BrkgaParams& params, double alpha, int tail_factor,
                    std::uint64_t stream_seed, const ExecContext& ctx = {});

/// Stop bookkeeping across main-loop iterations.
struct ConvergenceState {
    int gic = 0;  // iterations since the best solution changed
    int lic = 0;  // iterations since the last improvement
    double best_cost = std::numeric_limits<double>::infinity();
    double last_cost = std::numeric_limits<double>::infinity();
    double elapsed = 0.0;  // seconds, maintained by the caller
};

/// Counter update for one finished iteration. A counter resets when the
/// reference cost exceeds (1 + min_improve) times the current cost and
/// increments otherwise; best/last are updated after the comparison.
/// Returns true when either counter reaches its bound or the time limit is
/// exhausted.
bool update_convergence(ConvergenceState& state, double current_cost,
                        const SolverParams& params);

struct SolveStats {
    int iterations = 0;
    long long ls_calls = 0;    // heuristic calls issued by local search
    long long ssm_calls = 0;   // decoder calls issued by the main-loop GA passes
    long long tail_calls = 0;  // decoder calls issued by the tail pass
    double wall_seconds = 0.0;

    long long heuristic_calls() const { return ls_calls + ssm_calls + tail_calls; }
};

struct SolveResult {
    StochasticSolution solution;
    SolveStats stats;
};

/// Full solver run: alternates first-stage local search and per-scenario GA
/// passes with chromosome feedback until convergence, then refines the best
/// solution with the tail pass. Deterministic per master_seed, independent
/// of `threads`. Throws sstp::InfeasibleError before iterating if any
/// scenario's terminals are mutually unreachable.
SolveResult solve(const SstpInstance& instance, const SolverParams& solver_params,
                  const BrkgaParams& brkga_params, std::uint64_t master_seed,
                  int threads = 1);

/// Defer-everything bound: recourse cost of the empty first stage. Reference
/// value for the improvement metric.
RecourseResult buy_none(const SstpInstance& instance, const StpHeuristic& heuristic,
                        const ExecContext& ctx = {});

} // namespace sstp
