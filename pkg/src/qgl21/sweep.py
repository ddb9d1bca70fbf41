"""Seeded parameter draws and batch build-and-verify runs."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .atypical import classify, quotient_representation
from .basis import Signature
from .qnum import Params
from .rep import build_representation
from .verify import verify


def draw_parameters(samples: int, seed: int = 0, low: float = 0.5, high: float = 2.0,
                    margin: float = 0.05, digits: int = 4) -> list[tuple[Fraction, Fraction]]:
    """(p, q) pairs with both entries in (low, high) and |pq - 1| > margin, as short decimals."""
    rng = random.Random(seed)
    lo, hi, gap = Fraction(str(low)), Fraction(str(high)), Fraction(str(margin))
    out: list[tuple[Fraction, Fraction]] = []
    while len(out) < samples:
        p = Fraction(f"{rng.uniform(low, high):.{digits}f}")
        q = Fraction(f"{rng.uniform(low, high):.{digits}f}")
        if lo < p < hi and lo < q < hi and abs(p * q - 1) > gap:
            out.append((p, q))
    return out


def draw_constants(samples: int, seed: int = 0, low: float = 0.1, high: float = 10.0,
                   digits: int = 4) -> list[tuple[Fraction, Fraction, Fraction]]:
    rng = random.Random(seed)
    return [tuple(Fraction(f"{rng.uniform(low, high):.{digits}f}") for _ in range(3)) for _ in range(samples)]


def signatures(lmax_twice: int, m33_range: tuple[int, int], m23: int = 0) -> list[Signature]:
    """Dominant signatures [m23 + w, m23, m33] for w = 0..lmax_twice."""
    lo, hi = m33_range
    return [Signature(m23 + w, m23, m33) for w in range(lmax_twice + 1) for m33 in range(lo, hi + 1)]


@dataclass(frozen=True)
class CellResult:
    signature: Signature
    p: Fraction
    q: Fraction
    kind: str
    dimension: int
    block_sizes: tuple[int, ...]
    max_relative: float
    failures: tuple[str, ...]
    quotient_dimension: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures


def run_cell(signature, p, q, precision: int | None = None, a=(1, 1, 1), cyclicity: bool = False,
             quotient: bool = True) -> CellResult:
    params = Params(p, q, precision) if precision else Params(p, q)
    g = Signature.of(signature)
    rep = build_representation(g, params, a)
    report = verify(rep, cyclicity=cyclicity, informational=False)
    failures = list(report.failures())
    worst = report.max_relative()
    cls = classify(g)
    qdim = None
    if quotient and not cls.typical:
        qrep = quotient_representation(rep, cls)
        qreport = verify(qrep, cyclicity=cyclicity, informational=False)
        failures += [f"quotient:{f}" for f in qreport.failures()]
        worst = max(worst, qreport.max_relative())
        qdim = qrep.dimension
    return CellResult(g, Fraction(p), Fraction(q), cls.kind.value, rep.dimension, rep.basis.block_sizes,
                      worst, tuple(failures), qdim)


def _run(args):
    return run_cell(*args)


def run_cells(cells: Iterable[Sequence], jobs: int = 1) -> list[CellResult]:
    """Evaluate argument tuples for :func:`run_cell`; results come back in input order."""
    cells = [tuple(c) for c in cells]
    if jobs <= 1:
        return [_run(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, cells, chunksize=max(1, len(cells) // (4 * jobs))))
