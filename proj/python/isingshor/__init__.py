# Copyright 2026 The isingshor Authors
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

"""Pulse-level simulation of Shor's algorithm for N = 4 on an Ising spin chain."""

from isingshor._core import (
    ChainParams,
    CompilationError,
    DomainError,
    ExtractionError,
    IntegrationError,
    Pulse,
    PulseKind,
    PulseSequence,
    compile_shor4,
    design_rabi,
    design_rabi_for_chain,
    effective_rabi,
    evolve,
    extract_factor,
    extract_period,
    make_custom_pulse,
    make_pulse,
    perturb_durations,
    perturb_phases,
    rescale_rabi,
    resonant_frequency_catalog,
    reverse_bits,
    run_experiment,
    run_shor,
    spin_frequency,
    transition_frequency,
    two_level_step,
)

__all__ = [name for name in dir() if not name.startswith("_")]
