"""Generator matrices on the reduced basis, plus an independent induced-basis route.

Matrix convention: entry ``(i, j)`` is the coefficient of basis vector ``i``
in the image of basis vector ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from ._matrix import SparseMatrix
from .basis import (
    GZPattern,
    InducedVector,
    ModuleBasis,
    Signature,
    induced_basis,
    local_signature,
    module_basis,
)
from .qnum import Params, as_rational

GENERATORS = ("E11", "E22", "E33", "E12", "E21", "E23", "E32", "E13", "E31", "L")
EVEN = ("E11", "E22", "E33", "E12", "E21", "L")
CARTAN = ("E11", "E22", "E33", "L")

# L sits one unit higher on the blocks reached through E31
L_SHIFT = {0: Fraction(0), 1: Fraction(0), 2: Fraction(1), 3: Fraction(1)}

Terms = list[tuple[GZPattern, Any]]


@dataclass(frozen=True)
class LValues:
    l11: Fraction
    l12: Fraction
    l22: Fraction
    l13: Fraction
    l23: Fraction
    l33: Fraction
    l31: Fraction
    l: Fraction


@lru_cache(maxsize=1 << 16)
def l_values(pattern: GZPattern) -> LValues:
    m13, m23, m33 = pattern.global_signature
    m12, m22, m32 = pattern.local_signature
    return LValues(
        l11=pattern.m11 - 1,
        l12=m12 - 1,
        l22=m22 - 2,
        l13=m13 - 1,
        l23=m23 - 2,
        l33=m33 - 1,
        l31=pattern.m31 - 1,
        l=(m13 - m23) / 2,
    )


@lru_cache(maxsize=1 << 16)
def cartan_eigenvalue(name: str, pattern: GZPattern) -> Fraction:
    v = l_values(pattern)
    if name == "E11":
        return v.l11 + 1
    if name == "E22":
        return v.l12 + v.l22 - v.l11 + 2
    if name == "E33":
        return v.l31 + 1
    if name == "L":
        return (v.l12 - v.l22 - 1) / 2 + L_SHIFT[pattern.k]
    raise ValueError(f"{name} is not diagonal")


def _normalize_a(a, params: Params) -> tuple[Fraction, Fraction, Fraction]:
    vals = tuple(as_rational(x) for x in a)
    if len(vals) != 3:
        raise ValueError("expected three constants a1, a2, a3")
    if any(x == 0 for x in vals):
        raise ValueError("the constants a1, a2, a3 must be nonzero")
    return vals


def _keep(target: GZPattern, coef, out: Terms) -> None:
    # targets outside the betweenness range must come with an exactly vanishing coefficient
    if target.is_valid():
        out.append((target, coef))
    elif coef != 0:
        raise ArithmeticError(f"nonzero coefficient {coef} on invalid pattern {target.key()}")


def even_action(generator: str, pattern: GZPattern, params: Params) -> Terms:
    fld = params.field
    br = params.bracket
    if generator in CARTAN:
        return [(pattern, fld.num(cartan_eigenvalue(generator, pattern)))]
    v = l_values(pattern)
    out: Terms = []
    if generator == "E12":
        if pattern.m11 + 1 > pattern.m12:
            return out
        c = fld.sqrt(br(v.l12 - v.l11) * br(v.l11 - v.l22))
        if pattern.k == 2:
            c = c * params.ratio_pow(1)
        _keep(pattern.shifted(+1), c, out)
    elif generator == "E21":
        if pattern.m11 - 1 < pattern.m22:
            return out
        c = fld.sqrt(br(v.l12 - v.l11 + 1) * br(v.l11 - v.l22 - 1))
        if pattern.k == 3:
            c = c * params.ratio_pow(1)
        _keep(pattern.shifted(-1), c, out)
    else:
        raise ValueError(f"{generator} is not an even generator")
    return out


def qfactorial(n: int, params: Params):
    out = params.field.one
    for j in range(1, n + 1):
        out = out * params.bracket(j)
    return out


def lowering_chain(local_hw: GZPattern, steps: int, params: Params) -> tuple[GZPattern, Any]:
    """Pattern ``m11 = m12 - steps`` and the factor c with (m) = c * E21^steps (M).

    Here (M) is the block's highest-weight pattern ``local_hw``.
    """
    if local_hw.m11 != local_hw.m12:
        raise ValueError("lowering starts from the highest-weight pattern of a block")
    width = int(local_hw.m12 - local_hw.m22)
    if not 0 <= steps <= width:
        raise ValueError(f"steps must lie in 0..{width}")
    num = qfactorial(width - steps, params)
    den = qfactorial(width, params) * qfactorial(steps, params)
    c = params.field.sqrt(num / den)
    if local_hw.k == 3:
        c = c * params.ratio_pow(-steps)
    return local_hw.shifted(-steps), c


def odd_action_E23(pattern: GZPattern, params: Params, a=(1, 1, 1)) -> Terms:
    fld = params.field
    br, rp = params.bracket, params.ratio_pow
    a1, a2, a3 = (fld.num(x) for x in _normalize_a(a, params))
    v = l_values(pattern)
    two_l = 2 * v.l
    sq = fld.sqrt
    out: Terms = []
    k = pattern.k
    if k == 1:
        c = a1 * rp(-(v.l23 + v.l33 + 3)) * sq(br(v.l11 - v.l23) / br(two_l + 1)) * br(v.l23 + v.l33 + 3)
        _keep(pattern.shifted(k=0), c, out)
    elif k == 2:
        c = a2 * rp(-(v.l23 + v.l33 + 4)) * sq(br(v.l13 - v.l11) / br(two_l)) * br(v.l13 + v.l33 + 3)
        _keep(pattern.shifted(k=0), c, out)
    elif k == 3:
        pre = a3 * rp(-(v.l13 + v.l23 + v.l33 - v.l11 + 2))
        c1 = pre / (a1 * params.qs) * sq(br(v.l13 - v.l11) / br(two_l + 1)) * br(v.l13 + v.l33 + 3)
        _keep(pattern.shifted(k=1), c1, out)
        if two_l > 0:
            c2 = -pre / (a2 * params.ps) * sq(br(v.l11 - v.l23) * br(two_l)) * br(v.l23 + v.l33 + 3) / br(two_l + 1)
            _keep(pattern.shifted(k=2), c2, out)
    return out


def odd_action_E32(pattern: GZPattern, params: Params, a=(1, 1, 1)) -> Terms:
    fld = params.field
    br, rp = params.bracket, params.ratio_pow
    a1, a2, a3 = (fld.num(x) for x in _normalize_a(a, params))
    v = l_values(pattern)
    two_l = 2 * v.l
    sq = fld.sqrt
    out: Terms = []
    k = pattern.k
    if k == 0:
        _keep(pattern.shifted(k=1), sq(br(v.l11 - v.l23) / br(two_l + 1)) / a1, out)
        if two_l > 0:
            c = rp(-(v.l13 - v.l11 - 1)) * sq(br(v.l13 - v.l11) * br(two_l)) / br(two_l + 1) / a2
            _keep(pattern.shifted(k=2), c, out)
    elif k == 1:
        c = a1 / a3 * params.ps * sq(br(v.l13 - v.l11) / br(two_l + 1))
        _keep(pattern.shifted(k=3), c, out)
    elif k == 2:
        c = -a2 / a3 * params.ps * rp(v.l13 - v.l11 - 1) * sq(br(v.l11 - v.l23) / br(two_l))
        _keep(pattern.shifted(k=3), c, out)
    return out


@dataclass(frozen=True)
class ReprMatrices:
    matrices: dict[str, SparseMatrix]
    basis: ModuleBasis
    params: Params
    a: tuple[Fraction, Fraction, Fraction]
    kind: str = "full"

    def __getitem__(self, name: str) -> SparseMatrix:
        return self.matrices[name]

    def __getattr__(self, name: str):
        if name in GENERATORS:
            return self.matrices[name]
        raise AttributeError(name)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def a_scalars(self):
        return tuple(self.params.field.num(x) for x in self.a)

    def dense(self, name: str) -> list[list]:
        return self.matrices[name].to_dense()


def _fill(basis: ModuleBasis, terms_of, zero) -> SparseMatrix:
    m = SparseMatrix(len(basis), zero)
    for j, pt in enumerate(basis.patterns):
        for target, c in terms_of(pt):
            i = basis.index(target)
            if i is None:
                raise ArithmeticError(f"matrix element leaves the module: {target.key()}")
            m.add(i, j, c)
    return m


def composite_odd(rep_or_matrices, params: Params | None = None) -> tuple[SparseMatrix, SparseMatrix]:
    """E13 = E12 E23 - q^-1 E23 E12 and E31 = -(E21 E32 - p^-1 E32 E21)."""
    if isinstance(rep_or_matrices, ReprMatrices):
        mats, params = rep_or_matrices.matrices, rep_or_matrices.params
    else:
        mats = rep_or_matrices
    e12, e21, e23, e32 = mats["E12"], mats["E21"], mats["E23"], mats["E32"]
    e13 = e12 @ e23 - (e23 @ e12) * (1 / params.qs)
    e31 = -(e21 @ e32 - (e32 @ e21) * (1 / params.ps))
    return e13, e31


def build_representation(global_signature, params: Params, a=(1, 1, 1)) -> ReprMatrices:
    g = Signature.of(global_signature).require_dominant()
    a = _normalize_a(a, params)
    basis = module_basis(g)
    zero = params.field.zero
    mats: dict[str, SparseMatrix] = {}
    for name in EVEN:
        if name in CARTAN:
            mats[name] = SparseMatrix.diagonal(
                [params.field.num(cartan_eigenvalue(name, pt)) for pt in basis.patterns], zero
            )
        else:
            mats[name] = _fill(basis, lambda pt, n=name: even_action(n, pt, params), zero)
    mats["E23"] = _fill(basis, lambda pt: odd_action_E23(pt, params, a), zero)
    mats["E32"] = _fill(basis, lambda pt: odd_action_E32(pt, params, a), zero)
    mats["E13"], mats["E31"] = composite_odd(mats, params)
    return ReprMatrices({n: mats[n] for n in GENERATORS}, basis, params, a, "full")


# --- induced basis ---------------------------------------------------------------


def induced_representation(global_signature, params: Params) -> tuple[dict[str, SparseMatrix], list[InducedVector]]:
    """Generator matrices on the vectors E31^t1 E32^t2 (x) (m), (m) in V0.

    Obtained by commuting generators through the odd factors with the
    defining relations; independent of the reduced-basis formulas.
    """
    g = Signature.of(global_signature).require_dominant()
    fld = params.field
    br, rp = params.bracket, params.ratio_pow
    p, q = params.ps, params.qs
    m13, m23, m33 = g
    S = m13 + m23 + m33
    l = (m13 - m23) / 2
    vecs = induced_basis(g)
    idx = {v: i for i, v in enumerate(vecs)}
    n = len(vecs)
    zero = fld.zero
    mats = {name: SparseMatrix(n, zero) for name in GENERATORS if name not in ("E13", "E31")}

    def put(name, target: InducedVector, src: int, c):
        i = idx.get(target)
        if i is not None:
            mats[name].add(i, src, c)

    def c12(m):
        return fld.sqrt(br(m13 - m) * br(m - m23 + 1))

    def c21(m):
        return fld.sqrt(br(m13 - m + 1) * br(m - m23))

    def F(h):
        return rp(-h) * br(h)

    e21_factor = {(0, 0): fld.one, (0, 1): 1 / p, (1, 0): q, (1, 1): q / p}
    for j, vec in enumerate(vecs):
        t1, t2, m = vec
        mats["E11"][j, j] = fld.num(m - t1)
        mats["E22"][j, j] = fld.num(m13 + m23 - m - t2)
        mats["E33"][j, j] = fld.num(m33 + t1 + t2)
        mats["L"][j, j] = fld.num(l + Fraction(t1 + t2, 2))
        h1 = 2 * m - m13 - m23
        h2 = S - m
        if m + 1 <= m13:
            put("E12", InducedVector(t1, t2, m + 1), j, c12(m))
        if (t1, t2) == (1, 0):
            put("E12", InducedVector(0, 1, m), j, -rp(l - h1 / 2) * fld.power(q, h1))
        if m - 1 >= m23:
            put("E21", InducedVector(t1, t2, m - 1), j, e21_factor[(t1, t2)] * c21(m))
        if (t1, t2) == (0, 1):
            put("E21", InducedVector(1, 0, m), j, -fld.one)
        if (t1, t2) == (0, 0):
            put("E32", InducedVector(0, 1, m), j, fld.one)
        elif (t1, t2) == (1, 0):
            put("E32", InducedVector(1, 1, m), j, -p)
        elif (t1, t2) == (0, 1):
            put("E23", InducedVector(0, 0, m), j, F(h2))
        if (t1, t2) == (1, 0) and m - 1 >= m23:
            put("E23", InducedVector(0, 0, m - 1), j, (F(h2 + 1) / p - F(h2)) * c21(m))
        if (t1, t2) == (1, 1):
            if m - 1 >= m23:
                put("E23", InducedVector(0, 1, m - 1), j, (F(h2 + 1) / (p * p) - F(h2) / p) * c21(m))
            put("E23", InducedVector(1, 0, m), j, -F(h2 + 1) / p)
    mats["E13"], mats["E31"] = composite_odd(mats, params)
    return {name: mats[name] for name in GENERATORS}, vecs


def basis_transform(global_signature, params: Params, a=(1, 1, 1), direction: str = "reduced-to-induced") -> SparseMatrix:
    """Change of basis between the reduced and the induced basis.

    ``reduced-to-induced``: column j holds reduced vector j in induced
    coordinates. ``induced-to-reduced``: the inverse. For a matrix X on the
    induced basis, ``T_ir @ X @ T_ri`` is the same operator on the reduced basis.
    """
    g = Signature.of(global_signature).require_dominant()
    fld = params.field
    br, rp = params.bracket, params.ratio_pow
    p, q = params.ps, params.qs
    pw = fld.power
    sq = fld.sqrt
    a1, a2, a3 = (fld.num(x) for x in _normalize_a(a, params))
    red = module_basis(g)
    vecs = induced_basis(g)
    ind = {v: i for i, v in enumerate(vecs)}
    n = len(vecs)
    m13, m23, _ = g
    l13, l23 = m13 - 1, m23 - 2
    two_l = m13 - m23
    T = SparseMatrix(n, fld.zero)

    if direction == "reduced-to-induced":
        for j, pt in enumerate(red.patterns):
            l11 = pt.m11 - 1
            terms: list[tuple[InducedVector, Any]] = []
            if pt.k == 0:
                terms.append((InducedVector(0, 0, pt.m11), fld.one))
            elif pt.k == 1:
                terms.append((InducedVector(1, 0, pt.m11 + 1), -a1 * sq(br(l13 - l11) / br(two_l + 1))))
                terms.append((InducedVector(0, 1, pt.m11), a1 * pw(p, l11 - l13) * sq(br(l11 - l23) / br(two_l + 1))))
            elif pt.k == 2:
                terms.append((InducedVector(1, 0, pt.m11 + 1), a2 * rp(l13 - l11 - 1) * sq(br(l11 - l23) / br(two_l))))
                c = a2 * pw(q, l13 - l23 - 1) * pw(p, l11 - l13 + 1) * sq(br(l13 - l11) / br(two_l))
                terms.append((InducedVector(0, 1, pt.m11), c))
            else:
                terms.append((InducedVector(1, 1, pt.m11 + 1), a3))
            for vec, c in terms:
                i = ind.get(vec)
                if i is None:
                    if c != 0:
                        raise ArithmeticError(f"transform leaves the module at {vec}")
                    continue
                T.add(i, j, c)
        return T

    if direction == "induced-to-reduced":
        for j, vec in enumerate(vecs):
            t1, t2, m11 = vec
            l11 = m11 - 1
            terms2: list[tuple[int, Fraction, Any]] = []
            if (t1, t2) == (0, 0):
                terms2.append((0, m11, fld.one))
            elif (t1, t2) == (1, 0):
                terms2.append((1, m11 - 1, -pw(q, l11 - l23 - 1) * sq(br(l13 - l11 + 1) / br(two_l + 1)) / a1))
                if two_l > 0:
                    c = pw(q, l11 - l13) * sq(br(l11 - l23 - 1) * br(two_l)) / br(two_l + 1) / (a2 * p)
                    terms2.append((2, m11 - 1, c))
            elif (t1, t2) == (0, 1):
                terms2.append((1, m11, sq(br(l11 - l23) / br(two_l + 1)) / a1))
                if two_l > 0:
                    c = rp(-(l13 - l11 - 1)) * sq(br(l13 - l11) * br(two_l)) / br(two_l + 1) / a2
                    terms2.append((2, m11, c))
            else:
                terms2.append((3, m11 - 1, 1 / a3))
            for k, m, c in terms2:
                target = GZPattern(g, local_signature(g, k), m, k)
                i = red.index(target)
                if i is None:
                    if c != 0:
                        raise ArithmeticError(f"transform leaves the module at {target.key()}")
                    continue
                T.add(i, j, c)
        return T

    raise ValueError(f"unknown direction {direction!r}")


def conjugated_induced(global_signature, params: Params, a=(1, 1, 1)) -> dict[str, SparseMatrix]:
    """All generators from the induced-basis route, expressed on the reduced basis."""
    mats, _ = induced_representation(global_signature, params)
    t_ri = basis_transform(global_signature, params, a, "reduced-to-induced")
    t_ir = basis_transform(global_signature, params, a, "induced-to-reduced")
    return {name: t_ir @ m @ t_ri for name, m in mats.items()}


def block_hw_patterns(basis: ModuleBasis) -> list[GZPattern]:
    """Highest-weight pattern of every nonempty block."""
    out = []
    for k in range(4):
        r = basis.block_indices(k)
        if len(r):
            out.append(basis.patterns[r[0]])
    return out

