# Copyright 2026 The snnmap Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the snnmap toolchain.

Graphs are passed as JSON document text in the same formats the
command-line tool reads and writes.
"""

from ._core import (
    FORMAT_VERSION,
    BudgetExceededError,
    ConfigError,
    ConsistencyError,
    DeadlockError,
    Error,
    InfeasibleError,
    ParseError,
    ValidationError,
    check_deadlock,
    explore,
    graph_stats,
    pareto_filter,
    partition,
    repetition_vector,
    throughput,
)

__version__ = "0.1.0"

__all__ = [
    "FORMAT_VERSION",
    "BudgetExceededError",
    "ConfigError",
    "ConsistencyError",
    "DeadlockError",
    "Error",
    "InfeasibleError",
    "ParseError",
    "ValidationError",
    "check_deadlock",
    "explore",
    "graph_stats",
    "pareto_filter",
    "partition",
    "repetition_vector",
    "throughput",
]
