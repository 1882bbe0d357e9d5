"""How often does the zone criterion reject pairs whose convex combinations are all hyperbolic?

Draws pairs of shifted PSD quadratics, runs the zone criterion, and probes
hyperbolicity of alpha L + (1 - alpha) M on a fine alpha grid.  Rejections
with no failing combination show that the criterion is sufficient only.

    python scripts/zone_criterion_study.py --pairs 40 --n 2
"""
from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass, fields

import numpy as np

from hypermatpoly.hyperbolicity import is_hyperbolic
from hypermatpoly.polycore import MatrixPolynomial, affine_combine
from hypermatpoly.sampling import random_psd
from hypermatpoly.zones import convex_combination_hyperbolic


@dataclass
class Config:
    pairs: int = 40
    n: int = 2
    shift: float = 1.5
    alphas: int = 41
    samples: int = 300
    seed: int = 0


def quadratic(rng, n, shift):
    C = random_psd(rng, n) + 0.1 * np.eye(n)
    return MatrixPolynomial([-C, np.zeros((n, n)), np.eye(n)]).shifted(rng.uniform(-shift, shift))


def run(cfg: Config) -> Counter:
    rng = np.random.default_rng(cfg.seed)
    tally = Counter()
    for k in range(cfg.pairs):
        L, M = quadratic(rng, cfg.n, cfg.shift), quadratic(rng, cfg.n, cfg.shift)
        v = convex_combination_hyperbolic(L, M, samples=cfg.samples, refine_iters=30, seed=k)
        hyper = all(is_hyperbolic(affine_combine(L, M, a), samples=cfg.samples, seed=k)
                    for a in np.linspace(0, 1, cfg.alphas))
        tally[(bool(v.holds), hyper)] += 1
        if not v.holds and hyper:
            print(f"pair {k}: rejected (margin {min(v.margins):.3f}) but every sampled combination is hyperbolic")
    return tally


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        parser.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    cfg = Config(**vars(parser.parse_args()))
    t0 = time.perf_counter()
    tally = run(cfg)
    print("criterion / all combinations hyperbolic -> count")
    for (holds, hyper), count in sorted(tally.items()):
        print(f"  {holds!s:>5} / {hyper!s:<5} -> {count}")
    print(f"{time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
