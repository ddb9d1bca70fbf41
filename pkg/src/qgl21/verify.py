"""Numerical verification of the defining relations on built matrices."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

import mpmath

from ._matrix import SparseMatrix
from .atypical import Classification, classify, invariant_subspace
from .basis import Signature
from .qnum import Params
from .rep import GENERATORS, ReprMatrices, block_hw_patterns, build_representation, cartan_eigenvalue


@dataclass(frozen=True)
class RelationResult:
    relation: str
    residual: Any  # max absolute entry of the residual matrix
    scale: Any  # largest entry of |c| |X| |Y| over product terms (max entry otherwise), floored at 1
    tolerance: float
    gated: bool = True

    @property
    def relative(self):
        return self.residual / self.scale

    @property
    def passed(self) -> bool:
        return self.relative <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "relation": self.relation,
            "residual": float(self.residual),
            "relative": float(self.relative),
            "tolerance": self.tolerance,
            "gated": self.gated,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class CyclicityResult:
    dimension: int
    spanned: int  # span of the orbit of basis vector 0
    seed_spans: dict[int, int]  # block -> span of the orbit of that block's top vector
    invariant: tuple[int, ...] | None  # smallest proper generated subspace when it is a coordinate one
    expected_invariant: tuple[int, ...] | None
    smallest_kept: float
    largest_dropped: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "spanned": self.spanned,
            "seed_spans": {str(k): v for k, v in self.seed_spans.items()},
            "invariant": list(self.invariant) if self.invariant is not None else None,
            "expected_invariant": list(self.expected_invariant) if self.expected_invariant is not None else None,
            "smallest_kept_singular_ratio": self.smallest_kept,
            "largest_dropped_singular_ratio": self.largest_dropped,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    signature: Signature
    kind: str
    classification: Classification
    entries: list[RelationResult] = field(default_factory=list)
    flags: dict[str, bool] = field(default_factory=dict)
    cyclicity: CyclicityResult | None = None
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        ok = all(e.passed for e in self.entries if e.gated) and all(self.flags.values())
        return ok and (self.cyclicity is None or self.cyclicity.passed)

    def failures(self) -> list[str]:
        out = [e.relation for e in self.entries if e.gated and not e.passed]
        out += [name for name, ok in self.flags.items() if not ok]
        if self.cyclicity is not None and not self.cyclicity.passed:
            out.append("cyclicity")
        return out

    def max_relative(self) -> float:
        return max((float(e.relative) for e in self.entries if e.gated), default=0.0)

    def as_dict(self) -> dict:
        return {
            "signature": self.signature.as_strings(),
            "kind": self.kind,
            "classification": {
                "kind": self.classification.kind.value,
                "factors": [str(f) for f in self.classification.factors],
            },
            "relations": [e.as_dict() for e in self.entries],
            "flags": dict(self.flags),
            "cyclicity": self.cyclicity.as_dict() if self.cyclicity else None,
            "wall_time": self.wall_time,
            "pass": self.passed,
        }

    def table(self) -> str:
        lines = ["relation\tresidual\trelative\ttolerance\tstatus"]
        for e in self.entries:
            status = ("pass" if e.passed else "FAIL") if e.gated else "info"
            lines.append(f"{e.relation}\t{float(e.residual):.3e}\t{float(e.relative):.3e}\t{e.tolerance:.1e}\t{status}")
        for name, ok in self.flags.items():
            lines.append(f"{name}\t-\t-\t-\t{'pass' if ok else 'FAIL'}")
        if self.cyclicity is not None:
            c = self.cyclicity
            lines.append(f"cyclicity\t{c.spanned}/{c.dimension}\t-\t-\t{'pass' if c.passed else 'FAIL'}")
        return "\n".join(lines)


def _prod(x: SparseMatrix, y: SparseMatrix, c=None) -> tuple[SparseMatrix, Any]:
    """c*x@y together with max(|c| |x| |y|), the scale its rounding error is measured against."""
    value, mag = x @ y, (x.abs() @ y.abs()).max_abs()
    if c is None:
        return value, mag
    return value * c, mag * abs(c)


def _result(rep: ReprMatrices, relation: str, terms: Iterable, tol: float | None, gated=True) -> RelationResult:
    # a term is a matrix or a (matrix, scale) pair from _prod
    one = rep.params.field.one
    mats, scales = [], [one]
    for t in terms:
        if isinstance(t, tuple):
            mats.append(t[0])
            scales.append(t[1])
        else:
            mats.append(t)
            scales.append(t.max_abs())
    total = mats[0]
    for m in mats[1:]:
        total = total + m
    tol = rep.params.tolerance if tol is None else tol
    return RelationResult(relation, total.max_abs(), max(scales), tol, gated)


def _diag(rep: ReprMatrices, fn: Callable[[int], Any]) -> SparseMatrix:
    return SparseMatrix.diagonal([fn(i) for i in range(rep.dimension)], rep.params.field.zero)


def _exact_eigen(rep: ReprMatrices, name: str, i: int) -> Fraction:
    return cartan_eigenvalue(name, rep.basis.patterns[i])


def check_cartan(rep: ReprMatrices, tol: float | None = None) -> list[RelationResult]:
    E = rep.matrices
    out = []
    diag = ("E11", "E22", "E33")
    for a in range(3):
        for b in range(a + 1, 3):
            x, y = E[diag[a]], E[diag[b]]
            out.append(_result(rep, f"[{diag[a]},{diag[b]}]", [_prod(x, y), _prod(y, x, -1)], tol))
    for i in (1, 2, 3):
        h = E[f"E{i}{i}"]
        for j in (1, 2):
            raising = E[f"E{j}{j + 1}"]
            c = (i == j) - (i == j + 1)
            out.append(_result(rep, f"[E{i}{i},E{j}{j + 1}]", [_prod(h, raising), _prod(raising, h, -1), raising * -c], tol))
            lowering = E[f"E{j + 1}{j}"]
            out.append(_result(rep, f"[E{i}{i},E{j + 1}{j}]", [_prod(h, lowering), _prod(lowering, h, -1), lowering * c], tol))
    L = E["L"]
    for name in ("E12", "E21", "E11", "E22", "E33"):
        x = E[name]
        out.append(_result(rep, f"[L,{name}]", [_prod(L, x), _prod(x, L, -1)], tol))
    return out


def check_deformed(rep: ReprMatrices, tol: float | None = None) -> list[RelationResult]:
    E = rep.matrices
    P = rep.params

    def rhs_e(i):
        h1 = _exact_eigen(rep, "E11", i) - _exact_eigen(rep, "E22", i)
        L = _exact_eigen(rep, "L", i)
        return P.ratio_pow(L - h1 / 2) * P.bracket(h1)

    def rhs_f(i):
        h2 = _exact_eigen(rep, "E22", i) + _exact_eigen(rep, "E33", i)
        return P.ratio_pow(-h2) * P.bracket(h2)

    e12, e21, e23, e32 = E["E12"], E["E21"], E["E23"], E["E32"]
    return [
        _result(rep, "[E12,E21]", [_prod(e12, e21), _prod(e21, e12, -1), -_diag(rep, rhs_e)], tol),
        _result(rep, "{E23,E32}", [_prod(e23, e32), _prod(e32, e23), -_diag(rep, rhs_f)], tol),
    ]


def check_composites(rep: ReprMatrices, tol: float | None = None) -> list[RelationResult]:
    """Stored E13, E31 agree with their definitions in terms of the Chevalley generators."""
    E = rep.matrices
    P = rep.params
    e12, e21, e23, e32 = E["E12"], E["E21"], E["E23"], E["E32"]
    return [
        _result(rep, "E13-def", [E["E13"], _prod(e12, e23, -1), _prod(e23, e12, 1 / P.qs)], tol),
        _result(rep, "E31-def", [E["E31"], _prod(e21, e32), _prod(e32, e21, -1 / P.ps)], tol),
    ]


def check_serre(rep: ReprMatrices, tol: float | None = None) -> list[RelationResult]:
    E = rep.matrices
    P = rep.params
    out = [_result(rep, f"{n}^2", [_prod(E[n], E[n])], tol) for n in ("E23", "E32", "E13", "E31")]
    e12, e13, e21, e31 = E["E12"], E["E13"], E["E21"], E["E31"]
    out.append(_result(rep, "[E12,E13]_p", [_prod(e12, e13), _prod(e13, e12, -P.ps)], tol))
    out.append(_result(rep, "[E21,E31]_q", [_prod(e21, e31), _prod(e31, e21, -P.qs)], tol))
    return out


def check_informational(rep: ReprMatrices, tol: float | None = None) -> list[RelationResult]:
    """Identities that hold here but are not part of the gated relation set."""
    E = rep.matrices
    L = E["L"]
    half = rep.params.field.num(Fraction(1, 2))
    out = []
    for name, sign in (("E23", 1), ("E32", -1), ("E13", 1), ("E31", -1)):
        x = E[name]
        out.append(_result(rep, f"[L,{name}]{'+' if sign > 0 else '-'}{name}/2", [_prod(L, x), _prod(x, L, -1), x * (half * sign)], tol, False))
    for a, b in (("E12", "E32"), ("E21", "E23")):
        x, y = E[a], E[b]
        out.append(_result(rep, f"[{a},{b}]", [_prod(x, y), _prod(y, x, -1)], tol, False))
    return out


# (source block, target block) pairs allowed for each generator
_RAISE = {(1, 0), (2, 0), (3, 1), (3, 2)}
_LOWER = {(0, 1), (0, 2), (1, 3), (2, 3)}
ALLOWED = {"E23": _RAISE, "E13": _RAISE, "E32": _LOWER, "E31": _LOWER}


def check_block_structure(rep: ReprMatrices) -> dict[str, bool]:
    blk = rep.basis.block_of
    flags = {}
    flags["diagonal:E11,E22,E33,L"] = all(rep[n].is_diagonal() for n in ("E11", "E22", "E33", "L"))
    flags["block-diagonal:E12,E21"] = all(
        blk(i) == blk(j) for n in ("E12", "E21") for i, j, v in rep[n].items() if v != 0
    )
    for name, allowed in ALLOWED.items():
        flags[f"grading:{name}"] = all((blk(j), blk(i)) in allowed for i, j, v in rep[name].items() if v != 0)
    return flags


def check_highest_weight(rep: ReprMatrices) -> dict[str, bool]:
    flags = {}
    e23, e12 = rep["E23"], rep["E12"]
    flags["E23 kills V0"] = all(not e23.column(j) or all(v == 0 for v in e23.column(j).values())
                                for j in rep.basis.block_indices(0))
    tops = block_hw_patterns(rep.basis)
    idx = [rep.basis.index(pt) for pt in tops]
    flags["E12 kills block tops"] = all(all(v == 0 for v in e12.column(j).values()) for j in idx)
    fld = rep.params.field
    ok = True
    for pt, j in zip(tops, idx):
        for name, want in zip(("E11", "E22", "E33"), pt.local_signature):
            if rep[name][j, j] != fld.num(want):
                ok = False
    flags["block tops carry local signatures"] = ok
    # the right-hand sides of the deformed relations are evaluated on exact labels,
    # so the stored diagonals must agree with them
    tol = rep.params.tolerance
    flags["Cartan diagonals match labels"] = all(
        abs(rep[name][j, j] - fld.num(cartan_eigenvalue(name, pt))) <= tol * max(1, abs(cartan_eigenvalue(name, pt)))
        for name in ("E11", "E22", "E33", "L")
        for j, pt in enumerate(rep.basis.patterns)
    )
    return flags


# --- cyclicity --------------------------------------------------------------------


def _weights(rep: ReprMatrices) -> list[tuple]:
    return [tuple(cartan_eigenvalue(n, pt) for n in ("E11", "E22", "E33")) for pt in rep.basis.patterns]


def _orbit(rep: ReprMatrices, seed: int, tol: float):
    """Span of U.v for basis vector ``seed``, assembled weight space by weight space.

    Returns (dimension, {weight: orthonormal vectors}, kept/dropped singular ratios).
    """
    fld = rep.params.field
    weights = _weights(rep)
    gens = [rep[n] for n in ("E12", "E21", "E23", "E32")]
    spaces: dict[tuple, list[dict[int, Any]]] = {}
    images: dict[tuple, list[dict[int, Any]]] = {}

    def norm(v):
        return fld.sqrt(sum((x * x for x in v.values()), fld.zero))

    def offer(v: dict[int, Any]) -> dict[int, Any] | None:
        v = {i: x for i, x in v.items() if x != 0}
        if not v:
            return None
        w = weights[next(iter(v))]
        nv = norm(v)
        images.setdefault(w, []).append({i: x / nv for i, x in v.items()})
        basis_w = spaces.setdefault(w, [])
        r = dict(v)
        for u in basis_w:
            dot = sum((u.get(i, fld.zero) * x for i, x in r.items()), fld.zero)
            for i, x in u.items():
                r[i] = r.get(i, fld.zero) - dot * x
        nr = norm(r)
        if nr <= tol * nv:
            return None
        u = {i: x / nr for i, x in r.items()}
        basis_w.append(u)
        return u

    queue = [offer({seed: fld.one})]
    while queue:
        v = queue.pop()
        for g in gens:
            u = offer(g.apply(v))
            if u is not None:
                queue.append(u)
    kept, dropped = 1.0, 0.0
    for w, vecs in images.items():
        sv = _singular_values(rep, vecs, w, weights)
        top = sv[0]
        for s in sv:
            ratio = float(s / top)
            if s > tol * top:
                kept = min(kept, ratio)
            else:
                dropped = max(dropped, ratio)
    dim = sum(len(v) for v in spaces.values())
    return dim, spaces, kept, dropped


def _singular_values(rep, vecs, w, weights):
    fld = rep.params.field
    coords = [i for i, wt in enumerate(weights) if wt == w]
    rows = [[v.get(i, fld.zero) for i in coords] for v in vecs]
    ctx = getattr(fld, "ctx", mpmath.mp)
    m = ctx.matrix(rows)
    sv = ctx.svd_r(m, compute_uv=False)
    return sorted((sv[i] for i in range(len(sv))), reverse=True)


def _support(spaces, tol) -> set[int]:
    out = set()
    for vecs in spaces.values():
        for v in vecs:
            out.update(i for i, x in v.items() if abs(x) > tol)
    return out


def check_cyclicity(rep: ReprMatrices, tol: float | None = None) -> CyclicityResult:
    tol = rep.params.tolerance if tol is None else tol
    n = rep.dimension
    spanned, _, kept, dropped = _orbit(rep, 0, tol)
    seed_spans: dict[int, int] = {}
    proper = []
    for pt in block_hw_patterns(rep.basis):
        j = rep.basis.index(pt)
        d, spaces, k2, d2 = _orbit(rep, j, tol)
        kept, dropped = min(kept, k2), max(dropped, d2)
        seed_spans[pt.k] = d
        if d < n:
            proper.append((d, spaces))
    invariant = None
    if proper:
        d, spaces = min(proper, key=lambda t: t[0])
        supp = _support(spaces, tol)
        if len(supp) == d:
            invariant = tuple(sorted(supp))
    cls = classify(rep.basis.global_signature)
    expected = None
    if rep.kind == "full" and not cls.typical:
        expected = tuple(invariant_subspace(cls, rep.basis))
        ok = spanned == n and invariant == expected
    else:
        ok = spanned == n and all(d == n for d in seed_spans.values())
    return CyclicityResult(n, spanned, seed_spans, invariant, expected, kept, dropped, ok)


def check_classical_limit(global_signature, a=(1, 1, 1), precision: int | None = None, eps=Fraction(1, 10**6),
                          bound: float = 1e-4) -> RelationResult:
    """Max entrywise gap between the build at p = q = 1 + eps and the undeformed build."""
    near = Params(1 + eps, 1 + eps, precision) if precision else Params(1 + eps, 1 + eps)
    classical = Params.classical_limit(near.precision)
    r1 = build_representation(global_signature, near, a)
    r0 = build_representation(global_signature, classical, a)
    gap = near.field.zero
    for name in GENERATORS:
        d1, d0 = r1.dense(name), r0.dense(name)
        for row1, row0 in zip(d1, d0):
            for x, y in zip(row1, row0):
                gap = max(gap, abs(x - y))
    return RelationResult("classical-limit", gap, near.field.one, bound)


def verify(rep: ReprMatrices, tol: float | None = None, cyclicity: bool = True,
           informational: bool = True) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(rep.basis.global_signature, rep.kind, classify(rep.basis.global_signature))
    report.entries += check_cartan(rep, tol)
    report.entries += check_deformed(rep, tol)
    report.entries += check_serre(rep, tol)
    report.entries += check_composites(rep, tol)
    if informational:
        report.entries += check_informational(rep, tol)
    report.flags.update(check_block_structure(rep))
    report.flags.update(check_highest_weight(rep))
    if cyclicity:
        report.cyclicity = check_cyclicity(rep, tol)
    report.wall_time = time.perf_counter() - start
    return report
