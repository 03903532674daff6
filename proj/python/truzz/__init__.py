# Copyright 2026 The Truzz Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Coverage-guided fuzzing with byte analysis and new-edge seed ranking."""

from truzz._truzz import (
    STATS_HEADER,
    AnalysisError,
    CampaignError,
    ConfigError,
    Error,
    ExecError,
    ParseError,
    PreconditionError,
    TargetSpec,
    a12,
    analyze,
    compare_campaigns,
    fitness,
    load_target_spec,
    parse_target_spec,
    probe_mutate,
    replay,
    run_campaign,
)

__all__ = [
    "STATS_HEADER",
    "AnalysisError",
    "CampaignError",
    "ConfigError",
    "Error",
    "ExecError",
    "ParseError",
    "PreconditionError",
    "TargetSpec",
    "a12",
    "analyze",
    "compare_campaigns",
    "fitness",
    "load_target_spec",
    "parse_target_spec",
    "probe_mutate",
    "replay",
    "run_campaign",
]
