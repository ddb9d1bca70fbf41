"""Gel'fand-Zetlin style bases of the induced modules.

A module with global signature ``[m13, m23, m33]`` splits into four blocks
V0..V3 under the even subalgebra. Block ``k`` carries its own (local)
signature and is spanned by patterns indexed by ``m11``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .qnum import as_rational

BLOCKS = (0, 1, 2, 3)


@dataclass(frozen=True, order=True)
class Signature:
    m1: Fraction
    m2: Fraction
    m3: Fraction

    def __post_init__(self):
        for name in ("m1", "m2", "m3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, labels: "Signature | Iterable") -> "Signature":
        if isinstance(labels, Signature):
            return labels
        vals = list(labels)
        if len(vals) != 3:
            raise ValueError(f"a signature has three labels, got {len(vals)}")
        return cls(*vals)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        return cls.of(part for part in text.split(","))

    def __iter__(self):
        return iter((self.m1, self.m2, self.m3))

    @property
    def width(self) -> Fraction:
        return self.m1 - self.m2

    def is_dominant(self) -> bool:
        w = self.width
        return w >= 0 and w.denominator == 1

    def require_dominant(self) -> "Signature":
        if not self.is_dominant():
            raise ValueError(f"signature {self} is not dominant: m1 - m2 must be a nonnegative integer")
        return self

    def as_strings(self) -> list[str]:
        return [str(x) for x in self]

    def __str__(self):
        return "[" + ",".join(self.as_strings()) + "]"


@dataclass(frozen=True)
class GZPattern:
    global_signature: Signature
    local_signature: Signature
    m11: Fraction
    k: int

    @property
    def m31(self) -> Fraction:
        return self.local_signature.m3

    @property
    def m12(self) -> Fraction:
        return self.local_signature.m1

    @property
    def m22(self) -> Fraction:
        return self.local_signature.m2

    def is_valid(self) -> bool:
        a = self.m12 - self.m11
        b = self.m11 - self.m22
        return a >= 0 and b >= 0 and a.denominator == 1 and b.denominator == 1

    def shifted(self, dm: int = 0, k: int | None = None) -> "GZPattern":
        """Same global signature, m11 moved by ``dm``, optionally in another block."""
        if k is None or k == self.k:
            return GZPattern(self.global_signature, self.local_signature, self.m11 + dm, self.k)
        return GZPattern(self.global_signature, local_signature(self.global_signature, k), self.m11 + dm, k)

    def key(self) -> tuple[int, Fraction]:
        return (self.k, self.m11)


def _local(g: Signature, k: int) -> Signature:
    m13, m23, m33 = g
    if k == 0:
        return Signature(m13, m23, m33)
    if k == 1:
        return Signature(m13, m23 - 1, m33 + 1)
    if k == 2:
        return Signature(m13 - 1, m23, m33 + 1)
    if k == 3:
        return Signature(m13 - 1, m23 - 1, m33 + 2)
    raise ValueError(f"no block {k}")


def local_signature(g: Signature, k: int) -> Signature:
    return _local(Signature.of(g), k)


def local_signatures(g) -> list[tuple[int, Signature]]:
    """Signatures of the nonempty blocks, in block order."""
    g = Signature.of(g).require_dominant()
    out = []
    for k in BLOCKS:
        loc = _local(g, k)
        if loc.is_dominant():
            out.append((k, loc))
    return out


def enumerate_block(local, k: int = 0, global_signature: Signature | None = None) -> list[GZPattern]:
    """Patterns of one block, highest ``m11`` first."""
    local = Signature.of(local)
    if not local.is_dominant():
        return []
    g = global_signature if global_signature is not None else local
    n = int(local.width)
    return [GZPattern(g, local, local.m1 - j, k) for j in range(n + 1)]


def highest_weight_pattern(local, k: int = 0, global_signature: Signature | None = None) -> GZPattern:
    local = Signature.of(local).require_dominant()
    g = global_signature if global_signature is not None else local
    return GZPattern(g, local, local.m1, k)


@dataclass(frozen=True)
class ModuleBasis:
    global_signature: Signature
    patterns: tuple[GZPattern, ...]
    block_offsets: tuple[int, int, int, int]
    block_sizes: tuple[int, int, int, int]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({pt.key(): i for i, pt in enumerate(self.patterns)})

    def __len__(self):
        return len(self.patterns)

    @property
    def dimension(self) -> int:
        return len(self.patterns)

    def block_indices(self, k: int) -> range:
        start = self.block_offsets[k]
        return range(start, start + self.block_sizes[k])

    def index(self, pattern: GZPattern) -> int | None:
        """Position of ``pattern`` or None when it is not a basis vector."""
        if pattern.global_signature != self.global_signature:
            return None
        return self._index.get(pattern.key())

    def block_of(self, i: int) -> int:
        return self.patterns[i].k

    def restrict(self, blocks: Iterable[int]) -> "ModuleBasis":
        """Sub-basis made of whole blocks; dropped blocks keep a zero-length slot."""
        keep = set(blocks)
        pats, offsets, sizes = [], [], []
        for k in BLOCKS:
            offsets.append(len(pats))
            chunk = [self.patterns[i] for i in self.block_indices(k)] if k in keep else []
            pats.extend(chunk)
            sizes.append(len(chunk))
        return ModuleBasis(self.global_signature, tuple(pats), tuple(offsets), tuple(sizes))


def module_basis(g) -> ModuleBasis:
    g = Signature.of(g).require_dominant()
    pats: list[GZPattern] = []
    offsets, sizes = [], []
    for k in BLOCKS:
        offsets.append(len(pats))
        block = enumerate_block(_local(g, k), k, g)
        pats.extend(block)
        sizes.append(len(block))
    return ModuleBasis(g, tuple(pats), tuple(offsets), tuple(sizes))


def index_of(pattern: GZPattern, basis: ModuleBasis) -> int:
    i = basis.index(pattern)
    if i is None:
        raise KeyError(f"pattern {pattern.key()} is not in the basis of {basis.global_signature}")
    return i


class InducedVector(NamedTuple):
    """E31^theta1 E32^theta2 applied to the V0 pattern with label m11."""

    theta1: int
    theta2: int
    m11: Fraction


THETAS = ((0, 0), (0, 1), (1, 0), (1, 1))


def induced_basis(g) -> list[InducedVector]:
    g = Signature.of(g).require_dominant()
    n = int(g.width)
    return [InducedVector(t1, t2, g.m1 - j) for t1, t2 in THETAS for j in range(n + 1)]
