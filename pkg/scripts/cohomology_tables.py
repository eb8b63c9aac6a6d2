"""Print cohomology tables for named corpus modules."""

import argparse
from dataclasses import dataclass, fields

from bggkit.bgg import cohomology_table
from bggkit.corpus import builtin


@dataclass
class Config:
    names: str = "simple:0,twistmod:1,twistmod:-2"
    nvars: int = 3
    dmin: int = -4
    dmax: int = 4
    qmin: int = 0
    qmax: int = 2


def main(cfg: Config) -> None:
    for name in cfg.names.split(","):
        M = builtin(name, cfg.nvars).module
        T = cohomology_table(M, cfg.dmin, cfg.dmax, cfg.qmin, cfg.qmax)
        print(f"# {name} over {cfg.nvars} variables")
        print(T.render())
        print()


def parse() -> Config:
    p = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        p.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return Config(**vars(p.parse_args()))


if __name__ == "__main__":
    main(parse())
