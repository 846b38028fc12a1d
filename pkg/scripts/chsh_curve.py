"""Singlet correlation against the sphere-sign hidden-variable model."""

from dataclasses import dataclass

import numpy as np

from _common import parse_config, write_csv
from qq import bell, composite


@dataclass
class Config:
    theta_points: int = 16
    samples: int = 200_000
    seed: int = 20250101
    workers: int = 1


def main() -> None:
    cfg, out = parse_config(Config, __doc__)
    model = bell.LHVModel("sphere_sign", seed=cfg.seed)
    singlet = composite.bell_state("psi-")
    rows = []
    for th in np.linspace(0, np.pi, cfg.theta_points):
        b = bell.axis_in_xz(th)
        est = bell.lhv_correlation(model, bell.Z_HAT, b, cfg.samples, cfg.workers)
        rows.append((th, bell.quantum_correlation(singlet, bell.Z_HAT, b), est.mean, est.stderr, bell.lhv_line(th)))
    write_csv(cfg, ["theta", "E_quantum", "E_lhv", "stderr", "E_line"], rows, out)


if __name__ == "__main__":
    main()
