"""Finite abelian group arithmetic on dense element indices.

A group is described by its invariant factor chain ``n1 | n2 | ... | nr``.
Elements are addressed both as coordinate tuples and as a dense mixed-radix
index (the first factor is the least significant digit).  Subsets of the
group are packed into a single Python int, one bit per element, so that the
subsum dynamic programs run word-parallel: translating a whole subset by a
group element is a handful of shift/mask operations instead of a loop over
members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

DEFAULT_ORDER_CEILING = 64


class GroupMismatchError(ValueError):
    """Operands belong to different groups."""


class GroupCeilingError(ValueError):
    """Requested group order exceeds the configured ceiling."""


def _replicate(pattern: int, span: int, total: int) -> int:
    """Tile ``pattern`` (one ``span``-bit block) across ``total`` bits."""
    out = 0
    for off in range(0, total, span):
        out |= pattern << off
    return out


class GroupSpec:
    """A finite abelian group C_{n1} + ... + C_{nr} in invariant factor form.

    The factor chain must satisfy n1 | n2 | ... | nr with n1 > 1, and the
    order is capped by ``ceiling`` so every subset fits one machine word.
    Instances are immutable after construction and safe to share across
    threads; equality and hashing go by the factor tuple.
    """

    def __init__(self, invariant_factors: Iterable[int], ceiling: int = DEFAULT_ORDER_CEILING):
        factors = tuple(int(n) for n in invariant_factors)
        if not factors:
            raise ValueError("at least one invariant factor is required")
        if any(n < 2 for n in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"invariant factor chain broken: {a} does not divide {b}")
        order = math.prod(factors)
        if order > ceiling:
            raise GroupCeilingError(f"group order {order} exceeds ceiling {ceiling}")
        self.invariant_factors = factors
        self.rank = len(factors)
        self.order = order
        self.exponent = factors[-1]
        strides = []
        acc = 1
        for n in factors:
            strides.append(acc)
            acc *= n
        self._strides = tuple(strides)
        self.full_mask = (1 << order) - 1

    # -- identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupSpec) and self.invariant_factors == other.invariant_factors

    def __hash__(self) -> int:
        return hash(self.invariant_factors)

    def __repr__(self) -> str:
        return f"GroupSpec({self.spec_string!r})"

    def __str__(self) -> str:
        return self.spec_string

    @property
    def spec_string(self) -> str:
        """The external form: comma-separated invariant factors, e.g. ``2,12``."""
        return ",".join(str(n) for n in self.invariant_factors)

    def describe(self) -> str:
        return "C" + " x C".join(str(n) for n in self.invariant_factors)

    # -- element encoding -------------------------------------------------

    def index_of(self, coords: Iterable[int]) -> int:
        cs = tuple(coords)
        if len(cs) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(cs)}")
        idx = 0
        for c, n, b in zip(cs, self.invariant_factors, self._strides):
            if not 0 <= c < n:
                raise ValueError(f"coordinate {c} out of range [0,{n})")
            idx += c * b
        return idx

    def coords_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise ValueError(f"element index {index} out of range [0,{self.order})")
        out = []
        for n in self.invariant_factors:
            out.append(index % n)
            index //= n
        return tuple(out)

    def element(self, coords: Iterable[int]) -> "GroupElement":
        return GroupElement(self, self.index_of(coords))

    def element_at(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise ValueError(f"element index {index} out of range [0,{self.order})")
        return GroupElement(self, index)

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, 0)

    def elements(self) -> Iterator["GroupElement"]:
        for i in range(self.order):
            yield GroupElement(self, i)

    # -- index arithmetic --------------------------------------------------

    def add_indices(self, i: int, j: int) -> int:
        ci = self.coords_of(i)
        cj = self.coords_of(j)
        return self.index_of((a + b) % n for a, b, n in zip(ci, cj, self.invariant_factors))

    def neg_index(self, i: int) -> int:
        return self.scale_index(-1, i)

    def scale_index(self, k: int, i: int) -> int:
        cs = self.coords_of(i)
        return self.index_of((k * c) % n for c, n in zip(cs, self.invariant_factors))

    def order_of_index(self, i: int) -> int:
        cs = self.coords_of(i)
        o = 1
        for c, n in zip(cs, self.invariant_factors):
            o = math.lcm(o, n // math.gcd(n, c))
        return o

    # -- word-parallel subset translation -----------------------------------

    @cached_property
    def _translation_ops(self) -> tuple[tuple[tuple[int, int, int, int], ...], ...]:
        """Per element h: shift/mask ops realizing ``bits -> bits + h``.

        Adding h rotates each coordinate's digit independently; a rotation by
        t in coordinate i moves every bit within its span-block of size
        stride*n_i, which two masked shifts accomplish for the whole word at
        once.
        """
        N = self.order
        all_ops = []
        for h in range(N):
            digits = self.coords_of(h)
            ops = []
            for t, n, b in zip(digits, self.invariant_factors, self._strides):
                if t == 0:
                    continue
                span = b * n
                shift = t * b
                lo_width = span - shift
                pattern_lo = (1 << lo_width) - 1
                pattern_hi = ((1 << shift) - 1) << lo_width
                ops.append(
                    (
                        _replicate(pattern_lo, span, N),
                        shift,
                        _replicate(pattern_hi, span, N),
                        lo_width,
                    )
                )
            all_ops.append(tuple(ops))
        return tuple(all_ops)

    def translate_bits(self, bits: int, h: int) -> int:
        """Return the bit mask of ``{x + h : x in bits}``."""
        for m_lo, sl, m_hi, sr in self._translation_ops[h]:
            bits = ((bits & m_lo) << sl) | ((bits & m_hi) >> sr)
        return bits

    def dilate_bits(self, bits: int, k: int) -> int:
        """Return the bit mask of ``{k*x : x in bits}``."""
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << self.scale_index(k, low.bit_length() - 1)
            bits ^= low
        return out

    # -- shape predicates ---------------------------------------------------

    @property
    def is_cyclic(self) -> bool:
        return self.rank == 1

    @property
    def is_elementary_two(self) -> bool:
        return all(n == 2 for n in self.invariant_factors)

    def shape_2x2n(self) -> int | None:
        """Return n when the group is C2 + C2n (rank two, first factor 2)."""
        if self.rank == 2 and self.invariant_factors[0] == 2:
            return self.invariant_factors[1] // 2
        return None

    # -- automorphisms ------------------------------------------------------

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """All automorphisms as index permutations (brute force, cached).

        Candidates send each canonical generator to an element of the same
        order; a candidate is kept when the induced map is a bijection.
        """
        N = self.order
        gens = [self.index_of(tuple(1 if j == i else 0 for j in range(self.rank))) for i in range(self.rank)]
        pools = []
        for i, n in enumerate(self.invariant_factors):
            pools.append([g for g in range(N) if self.order_of_index(g) == n])
        perms = []
        images = [0] * self.rank

        def build(axis: int) -> None:
            if axis == self.rank:
                perm = [0] * N
                seen = 0
                for idx in range(N):
                    cs = self.coords_of(idx)
                    out = 0
                    for c, img in zip(cs, images):
                        for _ in range(c):
                            out = self.add_indices(out, img)
                    perm[idx] = out
                    seen |= 1 << out
                if seen == self.full_mask:
                    perms.append(tuple(perm))
                return
            for g in pools[axis]:
                images[axis] = g
                build(axis + 1)

        build(0)
        return tuple(perms)


def parse_group(text: str, ceiling: int = DEFAULT_ORDER_CEILING) -> GroupSpec:
    """Parse a comma-separated invariant factor chain such as ``2,12``."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"malformed group spec {text!r}")
    try:
        factors = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"malformed group spec {text!r}: factors must be integers") from None
    return GroupSpec(factors, ceiling=ceiling)


@dataclass(frozen=True)
class GroupElement:
    """A group element; value semantics, totally ordered by dense index."""

    group: GroupSpec
    index: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.group.coords_of(self.index)

    @property
    def order(self) -> int:
        return self.group.order_of_index(self.index)

    def _require_same_group(self, other: "GroupElement") -> None:
        if self.group != other.group:
            raise GroupMismatchError(f"elements of {self.group} and {other.group} do not mix")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_group(other)
        return GroupElement(self.group, self.group.add_indices(self.index, other.index))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_group(other)
        return GroupElement(self.group, self.group.add_indices(self.index, self.group.neg_index(other.index)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, self.group.neg_index(self.index))

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, self.group.scale_index(k, self.index))

    def __lt__(self, other: "GroupElement") -> bool:
        self._require_same_group(other)
        return self.index < other.index

    def __le__(self, other: "GroupElement") -> bool:
        self._require_same_group(other)
        return self.index <= other.index

    def __repr__(self) -> str:
        return f"({','.join(str(c) for c in self.coords)})"


class SumSet:
    """A subset of a group stored as one bit per element."""

    __slots__ = ("group", "bits")

    def __init__(self, group: GroupSpec, bits: int = 0):
        if not 0 <= bits <= group.full_mask:
            raise ValueError("bit mask out of range for group")
        self.group = group
        self.bits = bits

    @classmethod
    def empty(cls, group: GroupSpec) -> "SumSet":
        return cls(group, 0)

    @classmethod
    def full(cls, group: GroupSpec) -> "SumSet":
        return cls(group, group.full_mask)

    @classmethod
    def of(cls, group: GroupSpec, members: Iterable) -> "SumSet":
        bits = 0
        for m in members:
            bits |= 1 << _member_index(group, m)
        return cls(group, bits)

    def _require_same_group(self, other: "SumSet") -> None:
        if self.group != other.group:
            raise GroupMismatchError("sets over different groups do not mix")

    def __contains__(self, member) -> bool:
        return bool(self.bits >> _member_index(self.group, member) & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, SumSet) and self.group == other.group and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.group, self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __or__(self, other: "SumSet") -> "SumSet":
        self._require_same_group(other)
        return SumSet(self.group, self.bits | other.bits)

    def __and__(self, other: "SumSet") -> "SumSet":
        self._require_same_group(other)
        return SumSet(self.group, self.bits & other.bits)

    def indices(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def elements(self) -> Iterator[GroupElement]:
        for i in self.indices():
            yield GroupElement(self.group, i)

    def translate(self, h) -> "SumSet":
        return SumSet(self.group, self.group.translate_bits(self.bits, _member_index(self.group, h)))

    def dilate(self, k: int) -> "SumSet":
        return SumSet(self.group, self.group.dilate_bits(self.bits, k))

    def is_full(self) -> bool:
        return self.bits == self.group.full_mask

    def __repr__(self) -> str:
        members = ";".join(repr(e) for e in self.elements())
        return f"SumSet{{{members}}}"


def _member_index(group: GroupSpec, member) -> int:
    if isinstance(member, GroupElement):
        if member.group != group:
            raise GroupMismatchError("element belongs to a different group")
        return member.index
    idx = int(member)
    if not 0 <= idx < group.order:
        raise ValueError(f"element index {idx} out of range [0,{group.order})")
    return idx


def sumset(a: SumSet, b: SumSet) -> SumSet:
    """The pointwise sum {x + y : x in a, y in b}, computed honestly."""
    a._require_same_group(b)
    group = a.group
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    bits = 0
    for i in small.indices():
        bits |= group.translate_bits(big.bits, i)
    return SumSet(group, bits)


def doubling_subgroup(group: GroupSpec) -> SumSet:
    """The subgroup 2G = {2x : x in G}."""
    return SumSet.full(group).dilate(2)


def coset_index_mod_2G(group: GroupSpec, g) -> int:
    """Class of g in G/2G for groups C2 + C2n, numbered 0..3.

    The order is [2G, e1+2G, e2+2G, e1+e2+2G] with respect to the standard
    basis e1 = (1,0), e2 = (0,1).
    """
    if group.shape_2x2n() is None:
        raise ValueError(f"coset indexing needs a C2+C2n group, got {group}")
    a, b = group.coords_of(_member_index(group, g))
    return a + 2 * (b & 1)


@dataclass(frozen=True)
class Basis2x2n:
    """An ordered basis (e1, e2) of C2 + C2n with ord(e1)=2, ord(e2)=2n.

    ``coords`` maps each element index to its (a1, a2) coordinates in this
    basis; it doubles as the bijectivity certificate.
    """

    e1: GroupElement
    e2: GroupElement
    coords: tuple[tuple[int, int], ...]

    @property
    def group(self) -> GroupSpec:
        return self.e1.group

    def coords_of(self, g) -> tuple[int, int]:
        return self.coords[_member_index(self.group, g)]

    def combine(self, a1: int, a2: int) -> GroupElement:
        return a1 * self.e1 + a2 * self.e2


def enumerate_bases_2x2n(group: GroupSpec) -> list[Basis2x2n]:
    """All ordered bases of a C2 + C2n group, sorted by (index(e1), index(e2)).

    Brute force: try every pair with the right element orders and keep it
    exactly when a1*e1 + a2*e2 hits every element once.
    """
    n2 = group.shape_2x2n()
    if n2 is None:
        raise ValueError(f"basis enumeration needs a C2+C2n group, got {group}")
    exp = group.exponent
    N = group.order
    out = []
    for i in range(N):
        if group.order_of_index(i) != 2:
            continue
        for j in range(N):
            if group.order_of_index(j) != exp:
                continue
            coords: list[tuple[int, int] | None] = [None] * N
            seen = 0
            idx = 0
            for a1 in range(2):
                acc = group.scale_index(a1, i)
                for a2 in range(exp):
                    coords[acc] = (a1, a2)
                    seen |= 1 << acc
                    acc = group.add_indices(acc, j)
            if seen == group.full_mask:
                out.append(
                    Basis2x2n(
                        e1=GroupElement(group, i),
                        e2=GroupElement(group, j),
                        coords=tuple(coords),  # type: ignore[arg-type]
                    )
                )
    return out


class Hom:
    """A structure-preserving map used to push sequences between groups.

    Only the four shapes the verification needs are provided: coordinate
    projection, the quotient G -> G/2G, translation by a fixed element
    (affine, kept here because sequences push through it the same way), and
    dilation x -> k*x.
    """

    __slots__ = ("kind", "source", "target", "index_map")

    def __init__(self, kind: str, source: GroupSpec, target: GroupSpec, index_map: tuple[int, ...]):
        self.kind = kind
        self.source = source
        self.target = target
        self.index_map = index_map

    def map_index(self, i: int) -> int:
        return self.index_map[i]

    def __call__(self, g: GroupElement) -> GroupElement:
        if g.group != self.source:
            raise GroupMismatchError("element not in the hom's source group")
        return GroupElement(self.target, self.index_map[g.index])

    @classmethod
    def projection(cls, group: GroupSpec, axis: int) -> "Hom":
        if not 0 <= axis < group.rank:
            raise ValueError(f"axis {axis} out of range for rank {group.rank}")
        target = GroupSpec([group.invariant_factors[axis]])
        table = tuple(group.coords_of(i)[axis] for i in range(group.order))
        return cls("projection", group, target, table)

    @classmethod
    def quotient_mod_doubles(cls, group: GroupSpec) -> "Hom":
        even_axes = [i for i, n in enumerate(group.invariant_factors) if n % 2 == 0]
        if not even_axes:
            raise ValueError("G/2G is trivial for odd order groups")
        target = GroupSpec([2] * len(even_axes))
        table = []
        for i in range(group.order):
            cs = group.coords_of(i)
            table.append(target.index_of(cs[a] % 2 for a in even_axes))
        return cls("quotient_mod_doubles", group, target, tuple(table))

    @classmethod
    def translation(cls, group: GroupSpec, h) -> "Hom":
        hi = _member_index(group, h)
        table = tuple(group.add_indices(i, hi) for i in range(group.order))
        return cls("translation", group, group, table)

    @classmethod
    def dilation(cls, group: GroupSpec, k: int) -> "Hom":
        table = tuple(group.scale_index(k, i) for i in range(group.order))
        return cls("dilation", group, group, table)

    def __repr__(self) -> str:
        return f"Hom({self.kind}: {self.source} -> {self.target})"
