"""Size caps for the exhaustive-search operations.

Caps are configuration, not constants: every operation that may blow up
takes an optional Caps argument, and the OAKIT_CAP environment variable
overrides the general lattice cap for a whole run.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    lattice_max: int = 4096
    powerset_max: int = 5
    downset_max: int = 12
    pos_oracle_max: int = 14
    splitting_exhaustive_max: int = 12
    nuclei_max: int = 10


def default_caps() -> Caps:
    caps = Caps()
    override = os.environ.get("OAKIT_CAP")
    if override is not None:
        caps = replace(caps, lattice_max=int(override))
    return caps
