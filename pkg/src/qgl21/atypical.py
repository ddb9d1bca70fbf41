"""Typicality classification, invariant subspaces and irreducible quotients."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ._matrix import SparseMatrix
from .basis import ModuleBasis, Signature, module_basis
from .qnum import Params, as_rational
from .rep import (
    CARTAN,
    GENERATORS,
    ReprMatrices,
    cartan_eigenvalue,
    composite_odd,
    even_action,
    l_values,
)


class Kind(str, Enum):
    TYPICAL = "Typical"
    CLASS1 = "Class1"
    CLASS2 = "Class2"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    factors: tuple[Fraction, Fraction]

    @property
    def typical(self) -> bool:
        return self.kind is Kind.TYPICAL

    def __str__(self):
        f1, f2 = self.factors
        return f"{self.kind.value} ({f1}, {f2})"


# blocks spanning the invariant subspace and what survives in the quotient
INVARIANT_BLOCKS = {Kind.CLASS1: (2, 3), Kind.CLASS2: (1, 3)}
QUOTIENT_BLOCKS = {Kind.CLASS1: (0, 1), Kind.CLASS2: (0, 2)}
QUOTIENT_KIND = {Kind.CLASS1: "quotient-class1", Kind.CLASS2: "quotient-class2"}


def classify(global_signature) -> Classification:
    """Exact decision on the labels; p and q play no role for generic values."""
    g = Signature.of(global_signature).require_dominant()
    l13, l23, l33 = g.m1 - 1, g.m2 - 2, g.m3 - 1
    f1 = l13 + l33 + 3
    f2 = l23 + l33 + 3
    if f1 == 0 and f2 == 0:  # pragma: no cover - excluded by dominance
        raise AssertionError("both typicality factors vanish")
    if f1 == 0:
        kind = Kind.CLASS1
    elif f2 == 0:
        kind = Kind.CLASS2
    else:
        kind = Kind.TYPICAL
    return Classification(kind, (f1, f2))


def invariant_subspace(classification: Classification, basis: ModuleBasis) -> list[int]:
    if classification.typical:
        raise ValueError("a typical module has no proper invariant subspace")
    blocks = INVARIANT_BLOCKS[classification.kind]
    return sorted(i for k in blocks for i in basis.block_indices(k))


def quotient_dimension(classification: Classification, global_signature) -> int:
    g = Signature.of(global_signature)
    two_l = int(g.width)
    return {Kind.CLASS1: 2 * two_l + 3, Kind.CLASS2: 2 * two_l + 1}[classification.kind]


def quotient_representation(rep: ReprMatrices, classification: Classification | None = None) -> ReprMatrices:
    """Drop the invariant subspace: rows and columns of I are deleted."""
    if rep.kind != "full":
        raise ValueError("quotients are taken of full modules")
    actual = classify(rep.basis.global_signature)
    if classification is None:
        classification = actual
    elif classification != actual:
        raise ValueError(f"classification mismatch: {classification} vs {actual}")
    if classification.typical:
        raise ValueError("typical modules are irreducible; there is nothing to quotient")
    keep_blocks = QUOTIENT_BLOCKS[classification.kind]
    keep = [i for k in keep_blocks for i in rep.basis.block_indices(k)]
    mats = {name: m.submatrix(keep) for name, m in rep.matrices.items()}
    return ReprMatrices(mats, rep.basis.restrict(keep_blocks), rep.params, rep.a, QUOTIENT_KIND[classification.kind])


def quotient_closed_form(global_signature, params: Params, a=(1, 1, 1)) -> ReprMatrices:
    """Quotient built directly from the odd matrix elements with the atypicality condition substituted."""
    g = Signature.of(global_signature).require_dominant()
    cls = classify(g)
    if cls.typical:
        raise ValueError("typical modules have no quotient")
    fld = params.field
    br, rp, sq = params.bracket, params.ratio_pow, fld.sqrt
    a_exact = tuple(as_rational(x) for x in a)
    if any(x == 0 for x in a_exact):
        raise ValueError("the constants a1, a2, a3 must be nonzero")
    a1, a2, _ = (fld.num(x) for x in a_exact)
    basis = module_basis(g).restrict(QUOTIENT_BLOCKS[cls.kind])
    n = len(basis)
    zero = fld.zero
    mats: dict[str, SparseMatrix] = {}
    for name in ("E11", "E22", "E33", "E12", "E21", "L"):
        m = SparseMatrix(n, zero)
        for j, pt in enumerate(basis.patterns):
            if name in CARTAN:
                m[j, j] = fld.num(cartan_eigenvalue(name, pt))
                continue
            for target, c in even_action(name, pt, params):
                m.add(basis.index(target), j, c)
        mats[name] = m
    e23 = SparseMatrix(n, zero)
    e32 = SparseMatrix(n, zero)
    other = 1 if cls.kind is Kind.CLASS1 else 2
    for j, pt in enumerate(basis.patterns):
        v = l_values(pt)
        two_l = 2 * v.l
        if pt.k == 0:
            target = pt.shifted(k=other)
            if other == 1:
                c = sq(br(v.l11 - v.l23) / br(two_l + 1)) / a1
            else:
                c = rp(-(v.l13 - v.l11 - 1)) * sq(br(v.l13 - v.l11) * br(two_l)) / br(two_l + 1) / a2
            i = basis.index(target)
            if i is not None:
                e32.add(i, j, c)
        elif pt.k == other:
            target = pt.shifted(k=0)
            if other == 1:
                c = a1 * rp(-(v.l23 - v.l13)) * sq(br(v.l11 - v.l23) / br(two_l + 1)) * br(v.l23 - v.l13)
            else:
                c = a2 * rp(-1) * sq(br(v.l13 - v.l11) / br(two_l)) * br(two_l + 1)
            i = basis.index(target)
            if i is not None:
                e23.add(i, j, c)
            elif c != 0:
                raise ArithmeticError(f"nonzero coefficient on invalid pattern {target.key()}")
    mats["E23"], mats["E32"] = e23, e32
    mats["E13"], mats["E31"] = composite_odd(mats, params)
    return ReprMatrices({k: mats[k] for k in GENERATORS}, basis, params, a_exact, QUOTIENT_KIND[cls.kind])
