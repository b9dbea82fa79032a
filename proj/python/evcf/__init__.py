# Copyright 2026 The evcf Authors
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

"""Continuous-time intensity estimation from event streams and frames."""

from ._evcf import (
    ComplementaryFilter,
    Config,
    Error,
    IoError,
    Mode,
    Session,
    SimulationConfig,
    calibrate,
    compute_alpha,
    from_log,
    photometric_error,
    read_events,
    read_frames,
    simulate,
    ssim,
    to_log,
    write_events,
    write_frames,
)

__all__ = [
    "ComplementaryFilter",
    "Config",
    "Error",
    "IoError",
    "Mode",
    "Session",
    "SimulationConfig",
    "calibrate",
    "compute_alpha",
    "from_log",
    "photometric_error",
    "read_events",
    "read_frames",
    "simulate",
    "ssim",
    "to_log",
    "write_events",
    "write_frames",
]
