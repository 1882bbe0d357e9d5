"""Compare the interlacing criteria with both semidefinite programs on random scalar pairs.

    python scripts/sdp_agreement_sweep.py --pairs 300 --max-degree 6
"""
from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass, fields

import numpy as np

from hypermatpoly.interlacing import are_coprime, obreschkoff_report
from hypermatpoly.polycore import MatrixPolynomial, companion
from hypermatpoly.sampling import generic_pair, interlacing_pair
from hypermatpoly.sdpcheck import feasibility_realization, feasibility_symmetrizer, minimal_realization


@dataclass
class Config:
    pairs: int = 200
    max_degree: int = 6
    interlacing_fraction: float = 0.5
    seed: int = 0


def comp(f):
    return companion(MatrixPolynomial.from_scalar(f)).real


def run(cfg: Config) -> Counter:
    rng = np.random.default_rng(cfg.seed)
    tally = Counter()
    margins = []
    while tally["pairs"] < cfg.pairs:
        ell = int(rng.integers(1, cfg.max_degree + 1))
        f, h = interlacing_pair(rng, ell) if rng.random() < cfg.interlacing_fraction else generic_pair(rng, ell)
        if not are_coprime(f, h) or f.allclose(h, 1e-14):
            continue
        tally["pairs"] += 1
        verdict = obreschkoff_report(f, h).unanimous
        sym = feasibility_symmetrizer(comp(f), comp(h))
        real = feasibility_realization(minimal_realization(f, h))
        tally["interlacing"] += verdict is True
        tally["criteria_split"] += verdict is None
        tally["symmetrizer_agrees"] += sym.feasible == verdict
        tally["realization_agrees"] += real.feasible == verdict
        if sym.feasible:
            margins.append(sym.min_eig)
    if margins:
        print(f"smallest symmetrizer min-eigenvalue among feasible pairs: {min(margins):.3e}")
    return tally


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        parser.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    cfg = Config(**vars(parser.parse_args()))
    t0 = time.perf_counter()
    tally = run(cfg)
    for key in ("pairs", "interlacing", "criteria_split", "symmetrizer_agrees", "realization_agrees"):
        print(f"{key:>20}: {tally[key]}")
    print(f"{'seconds':>20}: {time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
