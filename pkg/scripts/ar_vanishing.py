"""Check Hom(tau^i B, C)_0 = 0 over the nice corpus and report stable Hom dimensions."""

import argparse
import sys
import time
from dataclasses import dataclass, fields

from bggkit.bgg import ar_vanishing_check
from bggkit.corpus import nice_corpus


@dataclass
class Config:
    nvars: int = 3
    imax: int = 3
    seeds: int = 1


def main(cfg: Config) -> int:
    corpus = nice_corpus(cfg.nvars, seeds=range(cfg.seeds))
    start = time.time()
    fails = 0
    for b, B in corpus.items():
        for c, C in corpus.items():
            dims = [r.stable_dim for r in ar_vanishing_check(B, C, cfg.imax)]
            fails += any(dims)
            print(f"{b:18s} {c:18s} {dims}")
    print(f"pairs={len(corpus) ** 2} failures={fails} seconds={time.time() - start:.1f}")
    return 1 if fails else 0


def parse() -> Config:
    p = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        p.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return Config(**vars(p.parse_args()))


if __name__ == "__main__":
    sys.exit(main(parse()))
