from __future__ import annotations
from dataclasses import dataclass

import numpy as np


@dataclass
class RbOccupancy:
    """Expected candidate occupancies with the block's uniforms integrated out.

    All vectors use original candidate labels (0 = block start).
    `deltas`/`xis` are kept in chain order, one entry per chain.
    """
    phi_per_chain: np.ndarray   # (r, p+1)
    phi: np.ndarray             # (p+1,)
    deltas: list[np.ndarray]
    xis: list[np.ndarray]
