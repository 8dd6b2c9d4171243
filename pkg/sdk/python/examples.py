"""
Hoopoe SDK - Usage Examples

Shows how to use the SDK for common scenarios.
"""

import asyncio

import numpy as np

from hoopoe import (
    Bounds,
    Candidate,
    CuckooConfig,
    CuckooSearch,
    ExperimentSpec,
    GridProbeSource,
    HoopoeConfig,
    HoopoeHeuristic,
    Objective,
    ProbeParams,
    compare,
    configure_logging,
    dig,
    emit_csv,
    emit_trace,
    make_rng,
    registry,
    run_experiment,
    run_experiment_async,
)


# Example 1: Single hoopoe run on a registered benchmark
async def single_run_example():
    """Minimize 2-d De Jong and look at the trace"""

    benchmark = registry("dejong", dim=2)
    config = HoopoeConfig.for_bounds(benchmark.objective.bounds, seed=7, theta=0.2)
    result = HoopoeHeuristic(config, benchmark.objective).run()

    print(f"Best value {result.best_value:.3e} after {result.evaluations_used} evaluations")
    print(f"Switched to probing at iteration {result.mode_switch_iteration}")
    for entry in result.trace[:5]:
        print(f"  {entry.iteration:4d} {entry.evaluations:6d} {entry.best_value:.4g} {entry.mode.value}")


# Example 2: Your own objective
async def custom_objective_example():
    """Any deterministic function over a box can be minimized"""

    def shifted_bowl(x):
        return float(np.sum((x - 0.5) ** 2))

    objective = Objective(
        name="shifted_bowl",
        evaluate=shifted_bowl,
        bounds=Bounds.from_box(-3.0, 3.0, 4),
        known_optimum_value=0.0,
    )
    config = HoopoeConfig.for_bounds(objective.bounds, max_evaluations=5000,
                                     target_tolerance=1e-8)
    result = HoopoeHeuristic(config, objective).run()
    print(f"Found {np.round(result.best.position, 4)} (success={result.success})")


# Example 3: Stepping the engine by hand
async def stepping_example():
    """Drive the engine one iteration at a time"""

    benchmark = registry("rastrigin", dim=3)
    engine = HoopoeHeuristic(
        HoopoeConfig.for_bounds(benchmark.objective.bounds, max_evaluations=3000),
        benchmark.objective,
    )
    state = engine.initialize()
    while not state.terminated:
        engine.step(state)
        if state.iteration % 100 == 0:
            print(f"Iteration {state.iteration}: closed {state.closed_ratio:.0%}, "
                  f"best {state.best_value:.4g}")
    print(engine.result(state).best_value)


# Example 4: Watching cuckoo search generations
async def cuckoo_example():
    """Cuckoo search with a generation handler"""

    benchmark = registry("ackley", dim=4)
    search = CuckooSearch(
        CuckooConfig.for_bounds(benchmark.objective.bounds, nests=15, p_a=0.25, seed=3),
        benchmark.objective,
    )

    @search.on_generation
    def report(generation, nests):
        if generation % 50 == 0:
            print(f"Generation {generation}: best nest {min(n.value for n in nests):.4g}")

    result = search.run()
    print(f"Cuckoo search finished with {result.best_value:.3e}")


# Example 5: Paired experiment and CSV output
async def experiment_example():
    """Run both algorithms on the same seeds and compare"""

    common = dict(dim=4, runs=20, base_seed=100, budget=20_000)
    hoopoe = await run_experiment_async(ExperimentSpec.build("rastrigin", "hoopoe", **common))
    cuckoo = await run_experiment_async(ExperimentSpec.build("rastrigin", "cuckoo", **common))
    report = compare(hoopoe, cuckoo)

    print(hoopoe.summary_line())
    print(cuckoo.summary_line())
    print(f"Mean evaluation delta {report.mean_delta:+.1f}, "
          f"wins {report.wins_first}/{report.wins_second}, ties {report.ties}")

    emit_csv(hoopoe, "rastrigin.hoopoe.csv")
    emit_csv(cuckoo, "rastrigin.cuckoo.csv")
    emit_trace(hoopoe.results[0], "rastrigin.trace.csv")


# Example 6: Checking a dig against exhaustive probing
async def grid_dig_example():
    """Dig with every grid point of the ball instead of random probes"""

    objective = registry("dejong", dim=2).objective
    grid = GridProbeSource(points_per_axis=7)
    params = ProbeParams(radius=0.5, probes_per_region=grid.size(2), dig_budget=2000,
                         min_radius=1e-4)
    start = np.array([1.0, 1.0])
    center = Candidate(start, objective(start), 0)
    found = dig(center, params, objective, make_rng(0), probe_source=grid)
    print(f"Dig from (1, 1) reached {found.value:.3e} at {found.position}")


# Example 7: Logging
async def logging_example():
    """Structured logs from a small experiment"""

    configure_logging("INFO", json_format=True)
    run_experiment(ExperimentSpec.build("dejong", "hoopoe", dim=2, runs=3))


# Main function to run examples
async def main():
    """Run example based on command line argument"""
    import sys

    if len(sys.argv) < 2:
        print("Usage: python examples.py <example_number>")
        print("Examples:")
        print("  1 - Single hoopoe run")
        print("  2 - Custom objective")
        print("  3 - Stepping the engine")
        print("  4 - Cuckoo search with a generation handler")
        print("  5 - Paired experiment and CSV output")
        print("  6 - Dig with exhaustive grid probes")
        print("  7 - JSON logging")
        return

    example = int(sys.argv[1])

    examples = {
        1: single_run_example,
        2: custom_objective_example,
        3: stepping_example,
        4: cuckoo_example,
        5: experiment_example,
        6: grid_dig_example,
        7: logging_example,
    }

    if example in examples:
        await examples[example]()
    else:
        print(f"Unknown example: {example}")


if __name__ == "__main__":
    asyncio.run(main())
