"""Decimation flows of the 1D Ising chain and Wilson-Fisher flows toward g* = eps/3."""

from dataclasses import dataclass

import numpy as np

from _common import parse_config, write_csv
from qq import rg


@dataclass
class Config:
    k_start_max: float = 3.0
    n_starts: int = 6
    steps: int = 10
    eps: float = 1.0
    ell_max: float = 10.0
    every: int = 500


def main() -> None:
    cfg, out = parse_config(Config, __doc__)
    rows = []
    for k0 in np.linspace(cfg.k_start_max / cfg.n_starts, cfg.k_start_max, cfg.n_starts):
        flow = rg.decimation_flow(k0, cfg.steps)
        rows += [("decimation", k0, float(s), k) for s, k in zip(flow.steps, flow.values)]
    for frac in (0.1, 0.5, 1.5, 3.0):
        g0 = frac * rg.wf_fixed_point(cfg.eps)
        flow = rg.wf_flow(g0, cfg.eps, cfg.ell_max)
        rows += [("wilson_fisher", g0, ell, g) for ell, g in zip(flow.ell[:: cfg.every], flow.g[:: cfg.every])]
    write_csv(cfg, ["flow", "start", "scale", "coupling"], rows, out)


if __name__ == "__main__":
    main()
