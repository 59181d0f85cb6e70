# Copyright 2026 The renyi-lab Authors
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

"""Python access to the renyi-lab C++ core."""

import json

from ._core import (
    DilationError,
    FormatError,
    alpha_scan,
    apply_channel,
    claim_names,
    divergence,
    fidelity,
    haar_unitary,
    q_alpha,
    random_channel,
    random_density,
    stinespring,
)
from ._core import _verify_json

__all__ = [
    "DilationError",
    "FormatError",
    "alpha_scan",
    "apply_channel",
    "claim_names",
    "divergence",
    "fidelity",
    "haar_unitary",
    "q_alpha",
    "random_channel",
    "random_density",
    "stinespring",
    "verify",
]


def verify(claim, dims=(2, 3, 4), trials=500, seed=20130621, tol=1e-9, threads=0, alphas=()):
    """Runs a verification campaign and returns its JSON report as a dict.

    Infinite values in the report are the string "+inf".
    """
    text = _verify_json(claim, list(dims), trials, seed, tol, threads, [str(a) for a in alphas])
    return json.loads(text)
