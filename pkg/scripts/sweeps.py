"""Run the seeded verification sweeps and print their outcome counts."""

import argparse
import sys
from dataclasses import dataclass, fields

from bggkit.harness import SUITES


@dataclass
class Config:
    suites: str = "lemma11,lemma12,lemma14,serre"
    seed: int = 0
    count: int = 20


def main(cfg: Config) -> int:
    bad = 0
    for name in cfg.suites.split(","):
        s = SUITES[name](seed=cfg.seed, count=cfg.count)
        print(" ".join(f"{k}={v}" for k, v in s.records().items()))
        bad += len(s.failures)
    return 1 if bad else 0


def parse() -> Config:
    p = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        p.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return Config(**vars(p.parse_args()))


if __name__ == "__main__":
    sys.exit(main(parse()))
