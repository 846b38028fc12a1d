"""Berry phase of a spin-1/2 on latitude loops compared with minus half the solid angle."""

from dataclasses import dataclass

import numpy as np

from _common import parse_config, write_csv
from qq import dynamics


@dataclass
class Config:
    loops: int = 12
    path_points: int = 4000


def main() -> None:
    cfg, out = parse_config(Config, __doc__)
    rows = []
    for alpha in np.linspace(0, np.pi, cfg.loops + 2)[1:-1]:
        path = dynamics.latitude_loop(alpha, cfg.path_points)
        omega = dynamics.solid_angle(path)
        gamma = dynamics.berry_phase(path)
        rows.append((alpha, omega, gamma, dynamics.wrap_phase(-omega / 2)))
    write_csv(cfg, ["alpha", "solid_angle", "berry_phase", "minus_half_solid_angle"], rows, out)


if __name__ == "__main__":
    main()
