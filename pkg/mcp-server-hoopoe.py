#!/usr/bin/env python3
"""
Hoopoe benchmark MCP server launcher

Serves list_functions, evaluate_function, run_experiment and compare over
stdio. Equivalent to the `hoopoe-mcp` console script.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "sdk", "python", "src"))

from hoopoe.server import main  # noqa: E402

if __name__ == "__main__":
    main()
