"""Exact-diagonalization gap of the transverse-field Ising chain against 2|J - h|."""

from dataclasses import dataclass

import numpy as np

from _common import parse_config, write_csv
from qq import rg


@dataclass
class Config:
    j: float = 1.0
    h_max: float = 2.5
    points: int = 26
    sizes: str = "4,6,8,10"
    boundary: str = "open"


def main() -> None:
    cfg, out = parse_config(Config, __doc__)
    sizes = [int(s) for s in cfg.sizes.split(",")]
    rows = []
    for h in np.linspace(0, cfg.h_max, cfg.points):
        for n in sizes:
            rows.append((h, n, rg.tfim_gap(cfg.j, h), rg.tfim_numeric_gap(n, cfg.j, h, cfg.boundary)))
    write_csv(cfg, ["h", "n_sites", "gap_exact", "gap_numeric"], rows, out)


if __name__ == "__main__":
    main()
