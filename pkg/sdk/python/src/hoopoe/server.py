"""
Hoopoe SDK - MCP Tool Server

Serves the benchmark registry and the experiment harness as MCP tools over
stdio. Every tool answers with one JSON text block:

    {"status": "success" | "error", "message": str, "data": {...}}
"""

import asyncio
import json
import logging
import math
from typing import Any, Dict, List, Optional

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import TextContent, Tool

from .benchfns import available_functions, registry
from .core import HoopoeError
from .harness import (
    Algorithm,
    ComparisonReport,
    ExperimentSpec,
    ExperimentSummary,
    run_experiment_async,
    run_protocol,
)
from .log import configure_logging

logger = logging.getLogger(__name__)

SERVER_NAME = "hoopoe-benchmarks"
DEFAULT_CONCURRENCY = 4

_EXPERIMENT_PROPERTIES = {
    "function": {"type": "string", "description": "Benchmark name (see list_functions)"},
    "dim": {"type": "integer", "description": "Dimension; function default when omitted"},
    "runs": {"type": "integer", "description": "Number of seeded runs", "default": 1},
    "seed": {"type": "integer", "description": "Base seed; run i uses seed + i", "default": 0},
    "budget": {"type": "integer", "description": "Objective evaluations per run"},
    "tolerance": {"type": "number", "description": "Success tolerance above the optimum"},
}


def _number(value: float) -> Optional[float]:
    # NaN/inf are not valid JSON
    value = float(value)
    return value if math.isfinite(value) else None


def summary_data(summary: ExperimentSummary) -> Dict[str, Any]:
    """JSON-ready view of an experiment summary"""
    return {
        "function": summary.function,
        "dim": summary.dim,
        "algorithm": summary.algorithm,
        "budget": summary.budget,
        "tolerance": summary.tolerance,
        "runs": summary.runs,
        "successes": summary.successes,
        "success_rate": summary.success_rate,
        "mean_evaluations": _number(summary.mean_evaluations),
        "std_evaluations": _number(summary.std_evaluations),
        "min_evaluations": _number(summary.min_evaluations),
        "median_evaluations": _number(summary.median_evaluations),
        "max_evaluations": _number(summary.max_evaluations),
        "records": [
            {
                "seed": r.seed,
                "success": r.success,
                "best_value": _number(r.best_value),
                "evaluations": r.evaluations,
                "mode_switch_iteration": r.mode_switch_iteration,
            }
            for r in summary.records
        ],
    }


def comparison_data(report: ComparisonReport) -> Dict[str, Any]:
    return {
        "function": report.function,
        "dim": report.dim,
        "first": report.first,
        "second": report.second,
        "mean_delta": _number(report.mean_delta),
        "std_delta": _number(report.std_delta),
        "success_rate_delta": report.success_rate_delta,
        "wins_first": report.wins_first,
        "wins_second": report.wins_second,
        "ties": report.ties,
    }


class OptimizationServer:
    """MCP server exposing the benchmark functions and experiment harness"""

    def __init__(self, concurrency: int = DEFAULT_CONCURRENCY):
        self.server = Server(SERVER_NAME)
        self.concurrency = concurrency
        self._setup_tools()

    def _response(self, status: str, message: str, data: Any = None) -> str:
        """Generate the tool response format"""
        response = {
            "status": status,
            "message": message,
            "data": data or {}
        }
        return json.dumps(response)

    def list_tools(self) -> List[Tool]:
        return [
            Tool(
                name="list_functions",
                description="List the benchmark functions with default dimension and bounds",
                inputSchema={"type": "object", "properties": {}},
            ),
            Tool(
                name="evaluate_function",
                description="Evaluate a benchmark function at a point",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "function": {"type": "string"},
                        "position": {"type": "array", "items": {"type": "number"}},
                    },
                    "required": ["function", "position"],
                },
            ),
            Tool(
                name="run_experiment",
                description="Repeated seeded runs of one algorithm on one function",
                inputSchema={
                    "type": "object",
                    "properties": {
                        **_EXPERIMENT_PROPERTIES,
                        "algorithm": {"type": "string", "enum": [a.value for a in Algorithm],
                                      "default": "hoopoe"},
                        "settings": {"type": "object",
                                     "description": "Algorithm overrides, e.g. theta, p_a, alpha"},
                    },
                    "required": ["function"],
                },
            ),
            Tool(
                name="compare",
                description="Hoopoe heuristic vs cuckoo search with paired seeds",
                inputSchema={
                    "type": "object",
                    "properties": {
                        **_EXPERIMENT_PROPERTIES,
                        "hoopoe_settings": {"type": "object"},
                        "cuckoo_settings": {"type": "object"},
                    },
                    "required": ["function"],
                },
            ),
        ]

    async def handle_tool(self, name: str, arguments: Optional[Dict[str, Any]]) -> str:
        """
        Run one tool call.

        Failures are answered with status "error"; nothing is raised.
        """
        arguments = arguments or {}
        try:
            if name == "list_functions":
                functions = []
                for fn in available_functions():
                    spec = registry(fn)
                    functions.append({
                        "name": spec.name,
                        "default_dim": spec.default_dim,
                        "lower": float(spec.default_bounds.lower[0]),
                        "upper": float(spec.default_bounds.upper[0]),
                        "optimum_value": spec.optimum_value,
                    })
                return self._response("success", f"Found {len(functions)} functions",
                                      {"functions": functions})

            elif name == "evaluate_function":
                position = [float(x) for x in arguments["position"]]
                spec = registry(arguments["function"], dim=len(position))
                value = spec.evaluate(position)
                return self._response("success", f"Evaluated {spec.name} (dim {spec.dim})",
                                      {"function": spec.name, "value": _number(value)})

            elif name == "run_experiment":
                spec = ExperimentSpec.build(
                    arguments["function"],
                    arguments.get("algorithm", Algorithm.HOOPOE.value),
                    dim=arguments.get("dim"),
                    runs=arguments.get("runs", 1),
                    base_seed=arguments.get("seed", 0),
                    budget=arguments.get("budget"),
                    success_tolerance=arguments.get("tolerance"),
                    **arguments.get("settings", {}),
                )
                summary = await run_experiment_async(spec, concurrency=self.concurrency)
                return self._response("success", summary.summary_line(), summary_data(summary))

            elif name == "compare":
                function = arguments["function"]
                rows = await asyncio.to_thread(
                    run_protocol,
                    {function: arguments.get("dim")},
                    runs=arguments.get("runs", 1),
                    base_seed=arguments.get("seed", 0),
                    budget=arguments.get("budget"),
                    success_tolerance=arguments.get("tolerance"),
                    hoopoe_overrides=arguments.get("hoopoe_settings"),
                    cuckoo_overrides=arguments.get("cuckoo_settings"),
                )
                row = rows[0]
                return self._response(
                    "success",
                    f"Compared hoopoe and cuckoo on {row.function} (dim {row.dim})",
                    {
                        "hoopoe": summary_data(row.hoopoe),
                        "cuckoo": summary_data(row.cuckoo),
                        "comparison": comparison_data(row.comparison),
                    },
                )

            return self._response("error", f"Unknown tool '{name}'")

        except KeyError as exc:
            if isinstance(exc, HoopoeError):
                return self._response("error", str(exc))
            return self._response("error", f"Missing argument: {exc.args[0]}")
        except (HoopoeError, TypeError, ValueError) as exc:
            logger.warning(f"Tool {name} rejected: {exc}")
            return self._response("error", str(exc))
        except Exception as e:
            logger.error(f"Error calling tool {name}: {e}")
            return self._response("error", f"Tool execution failed: {str(e)}")

    def _setup_tools(self):
        @self.server.list_tools()
        async def list_tools() -> List[Tool]:
            return self.list_tools()

        @self.server.call_tool()
        async def call_tool(name: str, arguments: dict) -> List[TextContent]:
            result = await self.handle_tool(name, arguments)
            return [TextContent(type="text", text=result)]

    async def run(self):
        """Serve stdio until the client disconnects"""
        logger.info(f"Starting {SERVER_NAME} MCP server")
        async with stdio_server() as (read_stream, write_stream):
            await self.server.run(
                read_stream,
                write_stream,
                self.server.create_initialization_options()
            )


async def run_server(concurrency: int = DEFAULT_CONCURRENCY):
    server = OptimizationServer(concurrency=concurrency)
    await server.run()


def main() -> None:
    # stdout carries the protocol
    configure_logging("INFO")
    asyncio.run(run_server())


if __name__ == "__main__":
    main()
