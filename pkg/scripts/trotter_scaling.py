"""First-order Trotter error against step count for a spin in a tilted field."""

from dataclasses import dataclass

import numpy as np

from _common import parse_config, write_csv
from qq import dynamics
from qq.linalg import SX, SZ


@dataclass
class Config:
    t: float = 2.0
    bx: float = 1.0
    bz: float = 0.7
    max_power: int = 10


def main() -> None:
    cfg, out = parse_config(Config, __doc__)
    terms = [cfg.bz * SZ / 2, cfg.bx * SX / 2]
    psi0 = np.array([1, 0], dtype=complex)
    rows = []
    for p in range(cfg.max_power + 1):
        n = 2**p
        _, err = dynamics.trotter_evolve(terms, psi0, cfg.t, n)
        rows.append((n, err, err * n))
    write_csv(cfg, ["n_steps", "error", "error_times_n"], rows, out)


if __name__ == "__main__":
    main()
